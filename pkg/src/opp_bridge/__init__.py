"""Bridge legacy OMNeT++ projects into CMake builds.

Recovers opp_makemake invocations from generated Makefiles, discovers the
simulator installation, resolves multi-project dependency graphs with
transitive NED folders, and emits deterministic CMake import targets,
toolchain files and opp_run launch scripts.
"""

from .emit import (
    EmittedArtifact,
    RunCommand,
    emit_import_target,
    emit_run_script,
    emit_toolchain_file,
)
from .errors import OppBridgeError
from .graph import (
    OMNETPP_NODE,
    Diagnostic,
    ProjectGraph,
    build_graph,
    check_graph,
    load_manifest,
    reachable_names,
    resolve_ned_folders,
    topological_order,
)
from .locator import (
    LibraryPair,
    OmnetppInstallation,
    enumerate_libraries,
    locate_installation,
    parse_makefile_inc,
)
from .makemake import (
    MakemakeInvocation,
    ProjectMetadata,
    TargetKind,
    extract_project_metadata,
    parse_makefile_variables,
    parse_makemake_options,
    parse_nedfolders,
    tokenize_options,
)
from .naming import DEFAULT_NAMING, NamingRule, debug_variant, release_location

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_NAMING",
    "Diagnostic",
    "EmittedArtifact",
    "LibraryPair",
    "MakemakeInvocation",
    "NamingRule",
    "OMNETPP_NODE",
    "OmnetppInstallation",
    "OppBridgeError",
    "ProjectGraph",
    "ProjectMetadata",
    "RunCommand",
    "TargetKind",
    "build_graph",
    "check_graph",
    "debug_variant",
    "emit_import_target",
    "emit_run_script",
    "emit_toolchain_file",
    "enumerate_libraries",
    "extract_project_metadata",
    "load_manifest",
    "locate_installation",
    "parse_makefile_inc",
    "parse_makefile_variables",
    "parse_makemake_options",
    "parse_nedfolders",
    "reachable_names",
    "release_location",
    "resolve_ned_folders",
    "tokenize_options",
    "topological_order",
]
