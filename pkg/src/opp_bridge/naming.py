"""Platform naming conventions for built library files."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from .makemake import ProjectMetadata, TargetKind


@dataclass(frozen=True)
class NamingRule:
    """Injectable prefix/extension table; the default is ELF-style."""

    prefix: str = "lib"
    shared_extension: str = ".so"
    static_extension: str = ".a"

    @property
    def extensions(self) -> tuple[str, str]:
        """Scan priority order: shared first, then static."""
        return (self.shared_extension, self.static_extension)

    def filename(self, kind: TargetKind, name: str) -> str:
        ext = self.static_extension if kind is TargetKind.STATIC_LIB else self.shared_extension
        return f"{self.prefix}{name}{ext}"


DEFAULT_NAMING = NamingRule()


def debug_variant(path: Path | str) -> Path:
    """Debug sibling of a library path: "d" inserted before the extension."""
    path = Path(path)
    stem, ext = os.path.splitext(path.name)
    return path.with_name(f"{stem}d{ext}")


def release_location(meta: ProjectMetadata, rule: NamingRule = DEFAULT_NAMING) -> Path:
    """Where the project's built library lands: <output_dir>/<prefix><name><ext>."""
    out_dir = Path(meta.invocation.output_dir)
    if not out_dir.is_absolute():
        out_dir = meta.project_root / out_dir
    return out_dir / rule.filename(meta.invocation.kind, meta.invocation.target_name)
