import filecmp

import pytest

from grcrypt.cli.demo import SCHEMES
from grcrypt.cli.format import parse
from grcrypt.cli.main import main


def test_demo_threepass_exit_zero(capsys):
    code = main(["demo", "threepass", "--group", "elemabelian:2:6", "--seed", "7"])
    out = capsys.readouterr().out
    assert code == 0
    assert "threepass" in out
    assert "verdict" in out


def test_demo_pk_exit_zero(capsys):
    code = main(["demo", "pk", "--n", "4", "--p", "5", "--seed", "1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "tamper" in out


def test_every_scheme_runs_clean(capsys):
    for scheme in SCHEMES:
        code = main(["demo", scheme, "--seed", "3"])
        assert code == 0, f"{scheme} exited {code}"
    capsys.readouterr()


def test_unknown_scheme_is_usage_error(capsys):
    code = main(["demo", "smoke"])
    capsys.readouterr()
    assert code == 2


def test_bad_group_string_is_usage_error(capsys):
    code = main(["demo", "threepass", "--group", "torus:3"])
    err = capsys.readouterr().err
    assert code == 2
    assert "usage error" in err


def test_bad_error_prob_is_usage_error(capsys):
    code = main(["demo", "keyexchange", "--error-prob", "1.5"])
    capsys.readouterr()
    assert code == 2


def test_scheme_failure_exits_one(capsys):
    # 3 does not divide 5 - 1, so pk key generation cannot build its
    # idempotent set; that is a scheme failure, not a usage problem
    code = main(["demo", "pk", "--n", "3", "--p", "5"])
    err = capsys.readouterr().err
    assert code == 1
    assert "scheme failure" in err


def test_out_file_is_deterministic(tmp_path, capsys):
    a = tmp_path / "a.grc"
    b = tmp_path / "b.grc"
    for path in (a, b):
        code = main(["demo", "keyexchange", "--seed", "11", "--out", str(path)])
        assert code == 0
    capsys.readouterr()
    assert filecmp.cmp(a, b, shallow=False)
    kf = parse(a.read_text())
    assert kf.notes["scheme"] == "keyexchange"
    assert kf.notes["seed"] == "11"


def test_out_file_differs_across_seeds(tmp_path, capsys):
    a = tmp_path / "a.grc"
    b = tmp_path / "b.grc"
    main(["demo", "threepass", "--seed", "1", "--out", str(a)])
    main(["demo", "threepass", "--seed", "2", "--out", str(b)])
    capsys.readouterr()
    assert not filecmp.cmp(a, b, shallow=False)


def test_noisy_coded_demo_still_exact(capsys):
    code = main(["demo", "coded-threepass", "--errors", "1", "--seed", "5"])
    out = capsys.readouterr().out
    assert code == 0
    assert "verdict" in out


def test_bench_empty_sizes(capsys):
    code = main(["bench", "--sizes", ""])
    out = capsys.readouterr().out
    assert code == 0
    assert "empty report" in out


def test_bench_small_run(capsys):
    code = main(["bench", "--sizes", "16,32", "--reps", "1"])
    out = capsys.readouterr().out
    assert code == 0
    lines = [ln for ln in out.splitlines() if ln.strip()]
    # header, rule, one row per size
    assert len(lines) == 4
    assert lines[-1].lstrip().startswith("32")


def test_bench_bad_sizes_is_usage_error(capsys):
    code = main(["bench", "--sizes", "16,frog"])
    capsys.readouterr()
    assert code == 2


def test_missing_subcommand_is_usage_error(capsys):
    code = main([])
    capsys.readouterr()
    assert code == 2
