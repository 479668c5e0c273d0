"""Discover an OMNeT++ installation and extract its build-facing surface.

Validation is purely directory-shape based (Makefile.inc plus
include/omnetpp.h); nothing is ever executed, so fixture trees fully
substitute for real installations.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from .errors import InstallationNotFoundError, NoVersionError
from .makemake import parse_makefile_variables
from .naming import DEFAULT_NAMING, NamingRule


@dataclass
class LibraryPair:
    """A release/debug library couple sharing one base name.

    The debug member's file stem is the release stem plus a trailing "d".
    At least one side is present.
    """

    base_name: str
    release_path: Path | None = None
    debug_path: Path | None = None


@dataclass
class OmnetppInstallation:
    root: Path
    version: str
    include_dir: Path
    lib_dir: Path
    compile_definitions: list[str]
    libraries: list[LibraryPair]


# Variables scanned for -D tokens, in order. A closed list keeps the
# extraction auditable.
_DEFINE_VARIABLES = ("CFLAGS", "CFLAGS_RELEASE", "CFLAGS_DEBUG", "DEFINES")


def parse_makefile_inc(text: str) -> tuple[str, list[str]]:
    """Extract (version, compile definitions) from Makefile.inc content.

    The version comes from OMNETPP_VERSION (absent or empty raises
    NoVersionError). Compile definitions are every -D token in the values of
    CFLAGS, CFLAGS_RELEASE, CFLAGS_DEBUG and DEFINES, scanned in that order,
    prefix stripped, first occurrence kept.
    """
    variables = parse_makefile_variables(text)
    version = variables.get("OMNETPP_VERSION", "")
    if not version:
        raise NoVersionError("Makefile.inc defines no OMNETPP_VERSION")
    definitions: list[str] = []
    for variable in _DEFINE_VARIABLES:
        for token in variables.get(variable, "").split():
            if token.startswith("-D") and len(token) > 2:
                definition = token[2:]
                if definition not in definitions:
                    definitions.append(definition)
    return version, definitions


def enumerate_libraries(lib_dir: Path | str, rule: NamingRule = DEFAULT_NAMING) -> list[LibraryPair]:
    """Pair up <prefix>opp*<ext> files in lib_dir as release/debug couples.

    A stem ending in "d" whose d-stripped stem was also found is the debug
    member of that stem's pair; otherwise the stem is its own pair's release
    member (library names may genuinely end in "d"). Per stem, the first
    extension in the rule's priority order wins; a same-stem file with a
    lower-priority extension is not scanned. Output is sorted by base name;
    an empty or missing directory yields an empty list.
    """
    lib_dir = Path(lib_dir)
    stems: dict[str, Path] = {}
    for extension in rule.extensions:
        if not lib_dir.is_dir():
            break
        for path in sorted(lib_dir.iterdir()):
            name = path.name
            if not path.is_file():
                continue
            if not name.startswith(rule.prefix + "opp") or not name.endswith(extension):
                continue
            stem = name[len(rule.prefix):-len(extension)]
            if stem:
                stems.setdefault(stem, path)
    pairs: list[LibraryPair] = []
    for stem in sorted(stems):
        if stem.endswith("d") and stem[:-1] in stems:
            continue  # claimed below as the debug member of its sibling
        pairs.append(
            LibraryPair(
                base_name=stem,
                release_path=stems[stem],
                debug_path=stems.get(stem + "d"),
            )
        )
    return pairs


def _validate_root(root: Path) -> str | None:
    if not root.is_dir():
        return "not a directory"
    if not (root / "Makefile.inc").is_file():
        return "missing Makefile.inc"
    if not (root / "include" / "omnetpp.h").is_file():
        return "missing include/omnetpp.h"
    return None


def locate_installation(
    explicit_root: Path | str | None = None,
    env_root: Path | str | None = None,
    path_entries: list[Path | str] | tuple = (),
    rule: NamingRule = DEFAULT_NAMING,
) -> OmnetppInstallation:
    """Find and load an installation, trying candidate roots in order.

    Candidates: the explicit root, then the environment-supplied root, then
    the parent of every PATH entry holding an executable named `omnetpp`
    (PATH entries are <root>/bin). The first candidate whose directory shape
    validates wins; duplicates collapse to their first occurrence. Raises
    InstallationNotFoundError listing every candidate tried and why it
    failed.
    """
    candidates: list[Path] = []

    def add_candidate(value: Path | str | None) -> None:
        if value is None:
            return
        normalized = Path(os.path.normpath(str(value)))
        if normalized not in candidates:
            candidates.append(normalized)

    add_candidate(explicit_root)
    add_candidate(env_root)
    for entry in path_entries:
        entry_path = Path(entry)
        executable = entry_path / "omnetpp"
        if executable.is_file() and os.access(executable, os.X_OK):
            add_candidate(entry_path.parent)

    attempts: list[tuple[str, str]] = []
    for root in candidates:
        reason = _validate_root(root)
        if reason is None:
            return _load_installation(root, rule)
        attempts.append((str(root), reason))
    raise InstallationNotFoundError(attempts)


def _load_installation(root: Path, rule: NamingRule) -> OmnetppInstallation:
    root = root.resolve()
    version, definitions = parse_makefile_inc(
        (root / "Makefile.inc").read_text(encoding="utf-8")
    )
    lib_dir = root / "lib"
    return OmnetppInstallation(
        root=root,
        version=version,
        include_dir=root / "include",
        lib_dir=lib_dir,
        compile_definitions=definitions,
        libraries=enumerate_libraries(lib_dir, rule),
    )
