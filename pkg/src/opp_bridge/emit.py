"""Deterministic text emission: import targets, toolchain file, run scripts.

Every artifact is a pure function of its inputs (no timestamps, no host
names), uses LF line endings and ends with a trailing newline, so equal
inputs are byte-identical across runs and platforms. Values containing `;`,
`"` or newlines are rejected outright instead of escaped; the emitted formats
cannot carry them safely.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import DeepIncludesError, ExecutableNotImportableError, UnsafeValueError
from .locator import OmnetppInstallation
from .makemake import ProjectMetadata, TargetKind
from .naming import DEFAULT_NAMING, NamingRule, debug_variant, release_location

IMPORT_HEADER = "# Generated by opp-bridge -- DO NOT EDIT"


@dataclass
class EmittedArtifact:
    destination: Path
    content: str


@dataclass
class RunCommand:
    """Everything an opp_run launch needs: runner, NED path, libraries, ini."""

    runner_path: Path | str
    ned_path: list
    library_paths: list
    ini_file: Path | str

    def __post_init__(self) -> None:
        if not self.ned_path:
            raise ValueError("ned_path must be nonempty")


def _safe(value: str) -> str:
    for bad, label in ((";", "semicolon"), ('"', "double quote"), ("\n", "newline")):
        if bad in value:
            raise UnsafeValueError(f"value contains a {label}: {value!r}")
    return value


def _join(values: list[str]) -> str:
    return ";".join(_safe(v) for v in values)


def _posix(value: Path | str) -> str:
    return Path(value).as_posix() if isinstance(value, Path) else str(value)


def _target_block(name: str, kind_word: str, properties: list[tuple[str, str]]) -> list[str]:
    # values arrive validated: scalars through _safe, lists item-wise in _join
    lines = [f"add_library({name} {kind_word} IMPORTED)"]
    lines.append(f"set_target_properties({name} PROPERTIES")
    for prop, value in properties:
        lines.append(f'  {prop} "{value}"')
    lines.append(")")
    return lines


def emit_import_target(
    meta: ProjectMetadata, rule: NamingRule = DEFAULT_NAMING
) -> EmittedArtifact:
    """Wrap a legacy project's binary as an imported CMake target.

    Refuses deep-include projects (DeepIncludesError) and executables
    (ExecutableNotImportableError). The debug location is the release
    location with "d" appended to the file stem; list-valued properties are
    omitted entirely when empty.
    """
    invocation = meta.invocation
    if invocation.deep:
        raise DeepIncludesError(meta.name)
    if invocation.kind is TargetKind.EXECUTABLE:
        raise ExecutableNotImportableError(
            f"project '{meta.name}' builds an executable; there is nothing to "
            "link against, so no import target is emitted"
        )
    release = release_location(meta, rule)
    kind_word = "SHARED" if invocation.kind is TargetKind.SHARED_LIB else "STATIC"

    properties: list[tuple[str, str]] = [
        ("IMPORTED_LOCATION", _safe(release.as_posix())),
        ("IMPORTED_LOCATION_DEBUG", _safe(debug_variant(release).as_posix())),
    ]
    if invocation.include_dirs:
        properties.append(("INTERFACE_INCLUDE_DIRECTORIES", _join(invocation.include_dirs)))
    if invocation.defines:
        properties.append(("INTERFACE_COMPILE_DEFINITIONS", _join(invocation.defines)))
    if meta.ned_folders:
        properties.append(("NED_FOLDERS", _join([f.as_posix() for f in meta.ned_folders])))

    lines = [IMPORT_HEADER]
    lines.extend(_target_block(_safe(meta.name), kind_word, properties))
    return EmittedArtifact(
        destination=Path(f"{meta.name}-targets.cmake"),
        content="\n".join(lines) + "\n",
    )


def emit_toolchain_file(inst: OmnetppInstallation) -> EmittedArtifact:
    """One imported omnetpp::<name> target per library pair, sorted by name.

    Every target carries the installation's include directory and compile
    definitions as interface properties; a location line is omitted when
    that side of the pair is absent.
    """
    lines = [f"# Generated by opp-bridge -- OMNeT++ {_safe(inst.version)} -- DO NOT EDIT"]
    include_dir = _safe(inst.include_dir.as_posix())
    definitions = _join(inst.compile_definitions) if inst.compile_definitions else ""
    for pair in sorted(inst.libraries, key=lambda p: p.base_name):
        properties: list[tuple[str, str]] = []
        if pair.release_path is not None:
            properties.append(("IMPORTED_LOCATION", _safe(Path(pair.release_path).as_posix())))
        if pair.debug_path is not None:
            properties.append(("IMPORTED_LOCATION_DEBUG", _safe(Path(pair.debug_path).as_posix())))
        properties.append(("INTERFACE_INCLUDE_DIRECTORIES", include_dir))
        if definitions:
            properties.append(("INTERFACE_COMPILE_DEFINITIONS", definitions))
        lines.append("")
        lines.extend(_target_block(f"omnetpp::{_safe(pair.base_name)}", "SHARED", properties))
    return EmittedArtifact(
        destination=Path("omnetpp-targets.cmake"),
        content="\n".join(lines) + "\n",
    )


def emit_run_script(cmd: RunCommand, separator: str = ":") -> EmittedArtifact:
    """POSIX shell launcher: exec opp_run -n <ned> -l <lib>... <ini> "$@"."""
    ned_parts = []
    for folder in cmd.ned_path:
        part = _safe(_posix(folder))
        if separator in part:
            raise UnsafeValueError(
                f"NED folder contains the path separator {separator!r}: {part!r}"
            )
        ned_parts.append(part)
    words = [f'exec "{_safe(_posix(cmd.runner_path))}"']
    words.append(f'-n "{separator.join(ned_parts)}"')
    for library in cmd.library_paths:
        words.append(f'-l "{_safe(_posix(library))}"')
    words.append(f'"{_safe(_posix(cmd.ini_file))}"')
    words.append('"$@"')
    return EmittedArtifact(
        destination=Path("run.sh"),
        content="#!/bin/sh\n" + " ".join(words) + "\n",
    )
