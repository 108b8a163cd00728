import pytest

from dyncover import bench
from dyncover.cli import main
from dyncover.dynamizer import read_sequence
from dyncover.setsystem import dump_instance
from dyncover.synth import synthetic_system

from conftest import FIX1_TEXT


@pytest.fixture
def workdir(tmp_path):
    (tmp_path / "fix1.hgr").write_text(FIX1_TEXT)
    small = synthetic_system(60, seed=3, num_sets=15)
    (tmp_path / "synth.hgr").write_text(dump_instance(small))
    return tmp_path


def test_dynamize_then_run(workdir, capsys):
    instance = workdir / "fix1.hgr"
    seq_path = workdir / "fix1.seq"
    assert main(["dynamize", str(instance), "--seed", "7", "--out", str(seq_path)]) == 0
    seq = read_sequence(seq_path.read_text())
    assert seq.seed == 7 and seq.k == 8

    out_csv = workdir / "run.csv"
    code = main([
        "run", "--algo", "naive", "--beta", "2.0",
        "--instance", str(instance), "--sequence", str(seq_path),
        "--check", "--out", str(out_csv),
    ])
    assert code == 0
    records = bench.read_records_csv(out_csv.read_text())
    assert len(records) == 1
    assert records[0].amortized_size == 0.5


def test_run_rejects_illegal_robust_beta(workdir, capsys):
    instance = workdir / "fix1.hgr"
    seq_path = workdir / "fix1.seq"
    main(["dynamize", str(instance), "--seed", "7", "--out", str(seq_path)])
    code = main([
        "run", "--algo", "robust", "--beta", "2.5",
        "--instance", str(instance), "--sequence", str(seq_path),
    ])
    assert code == 1
    assert "beta must lie in (1,2)" in capsys.readouterr().err


def test_verify_exits_zero_on_clean_run(workdir, capsys):
    instance = workdir / "synth.hgr"
    seq_path = workdir / "synth.seq"
    main(["dynamize", str(instance), "--seed", "11", "--out", str(seq_path)])
    for algo, beta in [("local", "1.9"), ("partial", "1.99"), ("global", "1.495")]:
        code = main([
            "verify", "--algo", algo, "--beta", beta,
            "--instance", str(instance), "--sequence", str(seq_path),
        ])
        assert code == 0, capsys.readouterr()


def test_verify_reports_step_on_corrupt_sequence(workdir, capsys):
    instance = workdir / "fix1.hgr"
    seq_path = workdir / "bad.seq"
    # deleting an element that was never inserted breaks the replay
    seq_path.write_text("# x=4 cap=1 seed=0 k=8\n+ 1\n- 2\n+ 2\n- 1\n+ 3\n- 3\n+ 4\n- 4\n")
    code = main([
        "verify", "--algo", "local", "--beta", "1.9",
        "--instance", str(instance), "--sequence", str(seq_path),
    ])
    assert code == 1


def test_sweep_profile_best_beta_pipeline(workdir, capsys):
    results = workdir / "results.csv"
    code = main([
        "sweep", "--algos", "local,global", "--betas", "1.25,1.9",
        "--instances", str(workdir), "--reps", "2", "--out", str(results),
    ])
    assert code == 0
    records = bench.read_records_csv(results.read_text())
    # 2 instances x 2 algos x 2 betas x 2 reps
    assert len(records) == 16
    assert results.read_text().startswith("# parallel=1\n")

    best_code = main(["best-beta", "--in", str(results)])
    assert best_code == 0
    out = capsys.readouterr().out
    assert "local" in out and "global" in out

    # profiles need one beta per algorithm: filter to the 1.9 rows
    filtered = workdir / "filtered.csv"
    filtered.write_text(
        bench.write_records_csv([r for r in records if r.beta == 1.9])
    )
    profile_csv = workdir / "profile.csv"
    code = main([
        "profile", "--metric", "size", "--in", str(filtered), "--out", str(profile_csv),
    ])
    assert code == 0
    assert profile_csv.read_text().startswith(bench.PROFILE_HEADER)


def test_sweep_parallel_matches_serial_counts(workdir):
    serial = workdir / "serial.csv"
    parallel = workdir / "parallel.csv"
    args = [
        "sweep", "--algos", "local", "--betas", "1.9",
        "--instances", str(workdir), "--reps", "1",
    ]
    assert main(args + ["--out", str(serial)]) == 0
    assert main(args + ["--parallel", "2", "--out", str(parallel)]) == 0
    a = bench.read_records_csv(serial.read_text())
    b = bench.read_records_csv(parallel.read_text())
    # identical apart from wall-clock columns
    assert [(r.instance, r.algo, r.beta, r.rep, r.amortized_size, r.amortized_recourse) for r in a] == [
        (r.instance, r.algo, r.beta, r.rep, r.amortized_size, r.amortized_recourse) for r in b
    ]


def test_profile_on_hand_derived_fixture(workdir):
    # two instances, A = [1, 2], B = [2, 2]: fractions 1.0 / 0.5 -> 1.0
    from dyncover.metrics import MetricsRecord

    records = [
        MetricsRecord("i1", "A", 1.5, 0, 10, 1.0, 1.0, 1.0),
        MetricsRecord("i2", "A", 1.5, 0, 10, 2.0, 1.0, 1.0),
        MetricsRecord("i1", "B", 1.5, 0, 10, 2.0, 1.0, 1.0),
        MetricsRecord("i2", "B", 1.5, 0, 10, 2.0, 1.0, 1.0),
    ]
    results = workdir / "fixture.csv"
    results.write_text(bench.write_records_csv(records))
    out = workdir / "profile.csv"
    assert main(["profile", "--metric", "size", "--in", str(results), "--out", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == bench.PROFILE_HEADER
    rows = {tuple(line.split(",")[:3]): float(line.split(",")[3]) for line in lines[1:]}
    assert rows[("size", "A", "1.0")] == 1.0
    assert rows[("size", "B", "1.0")] == 0.5
    assert rows[("size", "B", "2.0")] == 1.0


def test_oracle_subcommand(workdir, capsys):
    code = main(["oracle", "--instance", str(workdir / "fix1.hgr")])
    assert code == 0
    assert capsys.readouterr().out.strip() == "2"

    universe = workdir / "universe.txt"
    universe.write_text("4\n")
    code = main([
        "oracle", "--instance", str(workdir / "fix1.hgr"), "--universe", str(universe)
    ])
    assert code == 0
    assert capsys.readouterr().out.strip() == "1"


def test_unreadable_file_is_an_error(workdir, capsys):
    code = main(["oracle", "--instance", str(workdir / "missing.hgr")])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_unknown_flags_exit_nonzero(workdir):
    with pytest.raises(SystemExit) as exc:
        main(["run", "--bogus"])
    assert exc.value.code != 0
