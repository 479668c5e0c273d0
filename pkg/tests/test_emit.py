from pathlib import Path

import pytest

from opp_bridge.emit import (
    RunCommand,
    emit_import_target,
    emit_run_script,
    emit_toolchain_file,
)
from opp_bridge.errors import (
    DeepIncludesError,
    ExecutableNotImportableError,
    UnsafeValueError,
)
from opp_bridge.locator import LibraryPair, OmnetppInstallation
from opp_bridge.makemake import MakemakeInvocation, ProjectMetadata, TargetKind

from cmake_shape import parse_run_script, parse_target_blocks

GOLDEN = Path(__file__).parent / "golden"


def veins_metadata(**overrides) -> ProjectMetadata:
    fields = dict(
        target_name="veins",
        kind=TargetKind.SHARED_LIB,
        output_dir="/opt/sim/veins/out",
        include_dirs=["/opt/sim/veins/src"],
        defines=["VEINS_EXPORT"],
    )
    fields.update(overrides)
    invocation = MakemakeInvocation(**fields)
    return ProjectMetadata(
        name="veins",
        project_root=Path("/opt/sim/veins"),
        invocation=invocation,
        ned_folders=[Path("/opt/sim/veins/src/veins")],
    )


def omnetpp_installation() -> OmnetppInstallation:
    root = Path("/opt/sim/omnetpp-4.6")
    return OmnetppInstallation(
        root=root,
        version="4.6",
        include_dir=root / "include",
        lib_dir=root / "lib",
        compile_definitions=["NDEBUG", "WITH_PARSIM"],
        libraries=[
            LibraryPair(
                "oppsim", root / "lib/liboppsim.so", root / "lib/liboppsimd.so"
            ),
            LibraryPair(
                "oppenvir", root / "lib/liboppenvir.so", root / "lib/liboppenvird.so"
            ),
        ],
    )


def run_command() -> RunCommand:
    return RunCommand(
        runner_path="/opt/sim/omnetpp-4.6/bin/opp_run",
        ned_path=["/opt/sim/artery/src/artery", "/opt/sim/veins/src/veins"],
        library_paths=[
            "/opt/sim/vanetza/out/libvanetza.so",
            "/opt/sim/veins/out/libveins.so",
            "/opt/sim/artery/out/libartery.so",
        ],
        ini_file="omnetpp.ini",
    )


class TestEmitImportTarget:
    def test_matches_golden(self):
        artifact = emit_import_target(veins_metadata())
        assert artifact.content == (GOLDEN / "veins-targets.cmake").read_text()

    def test_static_lib_omits_empty_lists(self):
        meta = ProjectMetadata(
            name="mathlib",
            project_root=Path("/opt/sim/mathlib"),
            invocation=MakemakeInvocation(
                target_name="mathlib",
                kind=TargetKind.STATIC_LIB,
                output_dir="/opt/sim/mathlib/out",
                include_dirs=["/opt/sim/mathlib/include"],
            ),
            ned_folders=[],
        )
        blocks = parse_target_blocks(emit_import_target(meta).content)
        assert blocks[0]["kind"] == "STATIC"
        assert list(blocks[0]["properties"]) == [
            "IMPORTED_LOCATION",
            "IMPORTED_LOCATION_DEBUG",
            "INTERFACE_INCLUDE_DIRECTORIES",
        ]
        assert blocks[0]["properties"]["IMPORTED_LOCATION"].endswith("libmathlib.a")

    def test_deep_refused(self):
        with pytest.raises(DeepIncludesError):
            emit_import_target(veins_metadata(deep=True))

    def test_executable_refused(self):
        with pytest.raises(ExecutableNotImportableError):
            emit_import_target(veins_metadata(kind=TargetKind.EXECUTABLE))

    def test_debug_location_is_d_suffixed(self):
        blocks = parse_target_blocks(emit_import_target(veins_metadata()).content)
        props = blocks[0]["properties"]
        assert props["IMPORTED_LOCATION"] == "/opt/sim/veins/out/libveins.so"
        assert props["IMPORTED_LOCATION_DEBUG"] == "/opt/sim/veins/out/libveinsd.so"

    def test_relative_output_dir_resolves_against_root(self):
        meta = veins_metadata()
        meta.invocation.output_dir = "out"
        blocks = parse_target_blocks(emit_import_target(meta).content)
        assert (
            blocks[0]["properties"]["IMPORTED_LOCATION"]
            == "/opt/sim/veins/out/libveins.so"
        )

    def test_semicolon_rejected(self):
        meta = veins_metadata()
        meta.invocation.defines = ["BAD;LIST"]
        with pytest.raises(UnsafeValueError):
            emit_import_target(meta)

    def test_byte_determinism(self):
        assert (
            emit_import_target(veins_metadata()).content
            == emit_import_target(veins_metadata()).content
        )


class TestEmitToolchainFile:
    def test_matches_golden(self):
        artifact = emit_toolchain_file(omnetpp_installation())
        assert artifact.content == (GOLDEN / "omnetpp-targets.cmake").read_text()

    def test_pairs_sorted_by_base_name(self):
        blocks = parse_target_blocks(emit_toolchain_file(omnetpp_installation()).content)
        assert [b["name"] for b in blocks] == ["omnetpp::oppenvir", "omnetpp::oppsim"]

    def test_zero_pairs_header_only(self):
        inst = omnetpp_installation()
        inst.libraries = []
        content = emit_toolchain_file(inst).content
        assert content == "# Generated by opp-bridge -- OMNeT++ 4.6 -- DO NOT EDIT\n"

    def test_debug_only_pair_omits_release_line(self):
        inst = omnetpp_installation()
        inst.libraries = [
            LibraryPair("oppsim", None, Path("/opt/sim/omnetpp-4.6/lib/liboppsimd.so"))
        ]
        blocks = parse_target_blocks(emit_toolchain_file(inst).content)
        props = blocks[0]["properties"]
        assert "IMPORTED_LOCATION" not in props
        assert props["IMPORTED_LOCATION_DEBUG"].endswith("liboppsimd.so")

    def test_header_records_version(self):
        inst = omnetpp_installation()
        inst.version = "5.1"
        assert "OMNeT++ 5.1" in emit_toolchain_file(inst).content.splitlines()[0]


class TestEmitRunScript:
    def test_matches_golden(self):
        artifact = emit_run_script(run_command())
        assert artifact.content == (GOLDEN / "run_example.sh").read_text()

    def test_exec_line_shape(self):
        words = parse_run_script(emit_run_script(run_command()).content)
        assert words[0] == "exec"
        assert words[1] == "/opt/sim/omnetpp-4.6/bin/opp_run"
        assert words[2] == "-n"
        assert words[3] == "/opt/sim/artery/src/artery:/opt/sim/veins/src/veins"
        assert words[-2] == "omnetpp.ini"
        assert words[-1] == "$@"

    def test_zero_libraries(self):
        cmd = run_command()
        cmd.library_paths = []
        content = emit_run_script(cmd).content
        assert " -l " not in content

    def test_minimal_exec_line(self):
        cmd = RunCommand(
            runner_path="/o/bin/opp_run",
            ned_path=["A", "V"],
            library_paths=["L"],
            ini_file="omnetpp.ini",
        )
        assert emit_run_script(cmd).content == (
            '#!/bin/sh\nexec "/o/bin/opp_run" -n "A:V" -l "L" "omnetpp.ini" "$@"\n'
        )

    def test_single_ned_folder_no_separator(self):
        cmd = RunCommand(
            runner_path="/o/bin/opp_run",
            ned_path=["X"],
            library_paths=[],
            ini_file="omnetpp.ini",
        )
        assert '-n "X"' in emit_run_script(cmd).content

    def test_custom_separator(self):
        artifact = emit_run_script(run_command(), separator=",")
        words = parse_run_script(artifact.content)
        assert words[3] == "/opt/sim/artery/src/artery,/opt/sim/veins/src/veins"

    def test_empty_ned_path_rejected(self):
        with pytest.raises(ValueError):
            RunCommand(
                runner_path="/o/bin/opp_run",
                ned_path=[],
                library_paths=[],
                ini_file="x.ini",
            )

    def test_separator_inside_folder_rejected(self):
        cmd = RunCommand(
            runner_path="/o/bin/opp_run",
            ned_path=["a:b"],
            library_paths=[],
            ini_file="x.ini",
        )
        with pytest.raises(UnsafeValueError):
            emit_run_script(cmd)


class TestTemplateConformance:
    def test_all_artifacts_reparse(self):
        parse_target_blocks(emit_import_target(veins_metadata()).content)
        parse_target_blocks(emit_toolchain_file(omnetpp_installation()).content)
        parse_run_script(emit_run_script(run_command()).content)
