"""Exception types shared across the toolchain."""

from __future__ import annotations


class OppBridgeError(Exception):
    """Base class for every failure the toolchain reports deliberately."""


class UnterminatedQuoteError(OppBridgeError):
    """An option string ended inside a quoted region."""


class MissingArgumentError(OppBridgeError):
    """A detached-form flag appeared at the end of the token list."""


class PathEscapeError(OppBridgeError):
    """A .nedfolders entry normalized to a path outside the project root."""


class NoMakemakeOptionsError(OppBridgeError):
    """The Makefile defines no MAKEMAKE_OPTIONS variable."""


class NoVersionError(OppBridgeError):
    """Makefile.inc does not define OMNETPP_VERSION."""


class InstallationNotFoundError(OppBridgeError):
    """No candidate directory validated as an OMNeT++ installation root."""

    def __init__(self, attempts: list[tuple[str, str]]):
        self.attempts = attempts
        if attempts:
            detail = "; ".join(f"{root}: {reason}" for root, reason in attempts)
            message = f"no OMNeT++ installation found, candidates tried: {detail}"
        else:
            message = "no OMNeT++ installation found, no candidates to try"
        super().__init__(message)


class UnknownTargetError(OppBridgeError):
    """A requested project name does not exist in the graph."""


class CycleError(OppBridgeError):
    """The dependency graph contains a cycle; carries the full cycle path."""

    def __init__(self, path: list[str]):
        self.path = list(path)
        super().__init__("dependency cycle: " + " -> ".join(self.path))


class DanglingDependencyError(OppBridgeError):
    """A declared dependency names a project missing from the manifest."""

    def __init__(self, source: str, dependency: str):
        self.source = source
        self.dependency = dependency
        super().__init__(
            f"project '{source}' depends on '{dependency}', which is not declared"
        )


class ManifestError(OppBridgeError):
    """The manifest document is structurally invalid."""


class DeepIncludesError(OppBridgeError):
    """Import-target emission refused for a project built with --deep."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(
            f"DeepIncludesUnsupported: project '{name}' was generated with --deep; "
            "import targets cannot be produced for deep-include projects"
        )


class ExecutableNotImportableError(OppBridgeError):
    """Import targets wrap libraries; an executable has nothing to link."""


class UnsafeValueError(OppBridgeError):
    """A value contains characters the emitted file formats cannot carry."""
