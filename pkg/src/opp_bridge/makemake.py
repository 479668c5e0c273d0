"""Recover build metadata from opp_makemake-generated Makefiles.

Makefiles produced by opp_makemake record the generator's original command
line in the MAKEMAKE_OPTIONS variable, and a project's NED source folders live
in its .nedfolders file. This module parses both and combines them into a
ProjectMetadata record, without evaluating any Make logic beyond plain
variable assignments.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path

from .errors import (
    MissingArgumentError,
    NoMakemakeOptionsError,
    PathEscapeError,
    UnterminatedQuoteError,
)

# NAME, one of = := += ?=, value. Names must be nonempty and free of
# whitespace and operator characters; anything else is not an assignment.
_ASSIGN_RE = re.compile(r"^\s*([^\s:+?=#]+)\s*(\+=|:=|\?=|=)\s*(.*)$")


def parse_makefile_variables(text: str) -> dict[str, str]:
    """Evaluate the plain-assignment subset of a Makefile into a dict.

    Handles `=`, `:=`, `?=` (set only if absent) and `+=` (append with a
    single separating space), joins backslash continuations with one space,
    treats `#` as starting a comment anywhere outside a recipe line, and
    skips recipe lines (leading tab). Unparseable lines are skipped silently;
    conditionals, functions and `$(...)` expansion are out of scope.
    """
    logical: list[str] = []
    current: str | None = None
    for raw in text.splitlines():
        piece = raw if current is None else raw.lstrip()
        if piece.endswith("\\"):
            piece = piece[:-1].rstrip()
            current = piece if current is None else f"{current} {piece}"
            continue
        logical.append(piece if current is None else f"{current} {piece}")
        current = None
    if current is not None:
        logical.append(current)

    entries: dict[str, str] = {}
    for line in logical:
        if line.startswith("\t"):
            continue
        hash_pos = line.find("#")
        if hash_pos >= 0:
            line = line[:hash_pos]
        match = _ASSIGN_RE.match(line)
        if not match:
            continue
        name, op, value = match.group(1), match.group(2), match.group(3).strip()
        if op == "?=":
            entries.setdefault(name, value)
        elif op == "+=":
            old = entries.get(name)
            if not old:
                entries[name] = value
            elif value:
                entries[name] = f"{old} {value}"
        else:
            entries[name] = value
    return entries


def tokenize_options(value: str) -> list[str]:
    """Split a recovered option string into shell-style words.

    Unquoted whitespace separates tokens. Single and double quotes group
    characters and are stripped; a backslash escapes the next character
    everywhere except inside single quotes (a trailing backslash is kept
    literally). Raises UnterminatedQuoteError when the value ends inside a
    quoted region.
    """
    tokens: list[str] = []
    current: list[str] = []
    pending = False
    quote: str | None = None
    i = 0
    while i < len(value):
        ch = value[i]
        if quote == "'":
            if ch == "'":
                quote = None
            else:
                current.append(ch)
        elif ch == "\\":
            if i + 1 < len(value):
                i += 1
                current.append(value[i])
            else:
                current.append("\\")
            pending = True
        elif quote == '"':
            if ch == '"':
                quote = None
            else:
                current.append(ch)
        elif ch in ("'", '"'):
            quote = ch
            pending = True
        elif ch.isspace():
            if pending:
                tokens.append("".join(current))
                current = []
                pending = False
        else:
            current.append(ch)
            pending = True
        i += 1
    if quote is not None:
        raise UnterminatedQuoteError(f"unterminated {quote} quote in options: {value!r}")
    if pending:
        tokens.append("".join(current))
    return tokens


class TargetKind(Enum):
    EXECUTABLE = "executable"
    SHARED_LIB = "shared_lib"
    STATIC_LIB = "static_lib"


@dataclass
class MakemakeInvocation:
    """The recovered opp_makemake arguments of one legacy project."""

    target_name: str
    kind: TargetKind = TargetKind.EXECUTABLE
    output_dir: str = "out"
    include_dirs: list[str] = field(default_factory=list)
    defines: list[str] = field(default_factory=list)
    link_libs: list[str] = field(default_factory=list)
    link_dirs: list[str] = field(default_factory=list)
    submake_dirs: list[str] = field(default_factory=list)
    excluded_dirs: list[str] = field(default_factory=list)
    deep: bool = False
    unrecognized: list[str] = field(default_factory=list)


# Flags taking a detached argument. -o/-I/-D/-L/-X also accept the attached
# form; -l is attached-only; -O and -d are detached-only.
_DETACHED = frozenset({"-o", "-O", "-I", "-D", "-L", "-d", "-X"})
_ATTACHED_PREFIXES = ("-o", "-I", "-D", "-L", "-X")


def parse_makemake_options(tokens: list[str], fallback_name: str) -> MakemakeInvocation:
    """Interpret tokenized MAKEMAKE_OPTIONS into a MakemakeInvocation.

    Unknown tokens are collected in `unrecognized` rather than rejected,
    since option vocabularies drift across opp_makemake versions. When a
    scalar flag repeats, the last occurrence wins; include_dirs and defines
    keep the first occurrence of duplicates. `-o` absent means the caller's
    fallback (conventionally the Makefile directory's name) becomes the
    target name.
    """
    target_name: str | None = None
    kind = TargetKind.EXECUTABLE
    output_dir = "out"
    include_dirs: list[str] = []
    defines: list[str] = []
    link_libs: list[str] = []
    link_dirs: list[str] = []
    submake_dirs: list[str] = []
    excluded_dirs: list[str] = []
    deep = False
    unrecognized: list[str] = []

    def keep_first(seq: list[str], item: str) -> None:
        if item not in seq:
            seq.append(item)

    index = 0
    while index < len(tokens):
        token = tokens[index]
        if token in ("--make-so", "-s"):
            kind = TargetKind.SHARED_LIB
        elif token in ("--make-lib", "-a"):
            kind = TargetKind.STATIC_LIB
        elif token == "--deep":
            deep = True
        elif token in ("-f", "-r"):
            pass  # regeneration flags, meaningless after the fact
        elif token in _DETACHED:
            if index + 1 >= len(tokens):
                raise MissingArgumentError(f"option '{token}' requires an argument")
            index += 1
            argument = tokens[index]
            if token == "-o":
                target_name = argument
            elif token == "-O":
                output_dir = argument
            elif token == "-I":
                keep_first(include_dirs, argument)
            elif token == "-D":
                keep_first(defines, argument)
            elif token == "-L":
                link_dirs.append(argument)
            elif token == "-d":
                submake_dirs.append(argument)
            else:
                excluded_dirs.append(argument)
        elif len(token) > 2 and token.startswith(_ATTACHED_PREFIXES):
            argument = token[2:]
            flag = token[:2]
            if flag == "-o":
                target_name = argument
            elif flag == "-I":
                keep_first(include_dirs, argument)
            elif flag == "-D":
                keep_first(defines, argument)
            elif flag == "-L":
                link_dirs.append(argument)
            else:
                excluded_dirs.append(argument)
        elif len(token) > 2 and token.startswith("-l"):
            link_libs.append(token[2:])
        else:
            unrecognized.append(token)
        index += 1

    return MakemakeInvocation(
        target_name=target_name if target_name is not None else fallback_name,
        kind=kind,
        output_dir=output_dir,
        include_dirs=include_dirs,
        defines=defines,
        link_libs=link_libs,
        link_dirs=link_dirs,
        submake_dirs=submake_dirs,
        excluded_dirs=excluded_dirs,
        deep=deep,
        unrecognized=unrecognized,
    )


def parse_nedfolders(text: str, project_root: Path | str) -> list[Path]:
    """Resolve a .nedfolders document to absolute, deduplicated folder paths.

    One folder per line, relative to the project root; blank lines and `#`
    comments are skipped. Empty text stands for a missing file and yields the
    project root itself (the IDE default); a file with nothing but comments
    is an explicit declaration of zero NED folders. Entries escaping the
    project root raise PathEscapeError.
    """
    root = Path(os.path.normpath(str(project_root)))
    if not root.is_absolute():
        raise ValueError(f"project_root must be absolute: {project_root!r}")
    if text == "":
        return [root]
    folders: list[Path] = []
    for raw in text.splitlines():
        entry = raw.strip()
        if not entry or entry.startswith("#"):
            continue
        resolved = Path(os.path.normpath(str(root / entry)))
        if resolved != root and root not in resolved.parents:
            raise PathEscapeError(
                f"NED folder entry {entry!r} escapes project root {root}"
            )
        if resolved not in folders:
            folders.append(resolved)
    return folders


@dataclass
class ProjectMetadata:
    """One legacy project: recovered invocation plus root and NED folders."""

    name: str
    project_root: Path
    invocation: MakemakeInvocation
    ned_folders: list[Path]


def find_project_root(makefile_dir: Path) -> Path:
    """Nearest ancestor (inclusive) holding .nedfolders, else the dir itself."""
    for candidate in (makefile_dir, *makefile_dir.parents):
        if (candidate / ".nedfolders").is_file():
            return candidate
    return makefile_dir


def extract_project_metadata(makefile_path: Path | str, name: str) -> ProjectMetadata:
    """Read a generated Makefile and assemble the project's metadata.

    Raises NoMakemakeOptionsError when the Makefile defines no
    MAKEMAKE_OPTIONS variable (it was not produced by opp_makemake).
    Include directories and the output directory are made absolute against
    the Makefile's directory. A `--deep` project is still returned (callers
    decide how loudly to refuse emission).
    """
    makefile_path = Path(makefile_path).resolve()
    variables = parse_makefile_variables(makefile_path.read_text(encoding="utf-8"))
    if "MAKEMAKE_OPTIONS" not in variables:
        raise NoMakemakeOptionsError(
            f"{makefile_path}: no MAKEMAKE_OPTIONS variable; "
            "not a Makefile generated by opp_makemake"
        )
    makefile_dir = makefile_path.parent
    tokens = tokenize_options(variables["MAKEMAKE_OPTIONS"])
    invocation = parse_makemake_options(tokens, fallback_name=makefile_dir.name)

    absolute_includes: list[str] = []
    for entry in invocation.include_dirs:
        resolved = Path(os.path.normpath(str(makefile_dir / entry))).as_posix()
        if resolved not in absolute_includes:
            absolute_includes.append(resolved)
    absolute_out = Path(os.path.normpath(str(makefile_dir / invocation.output_dir))).as_posix()
    invocation = replace(invocation, include_dirs=absolute_includes, output_dir=absolute_out)

    project_root = find_project_root(makefile_dir)
    nedfolders_path = project_root / ".nedfolders"
    ned_text = nedfolders_path.read_text(encoding="utf-8") if nedfolders_path.is_file() else ""
    ned_folders = parse_nedfolders(ned_text, project_root)
    return ProjectMetadata(
        name=name,
        project_root=project_root,
        invocation=invocation,
        ned_folders=ned_folders,
    )
