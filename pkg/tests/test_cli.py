import csv
import json

import pytest

from chaoskit.cli import OU_COLUMNS, main


def run(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    return exc.value.code


def test_hermite_text(capsys):
    assert run(['hermite', '--m', '1', '--n', '1']) == 0
    assert capsys.readouterr().out.strip() == "z*zbar - rho"


def test_hermite_degree_cap(capsys):
    assert run(['hermite', '--m', '10', '--n', '10', '--degree-cap', '8']) == 1
    assert "ERROR:" in capsys.readouterr().err


def test_hermite_with_rho_bound(capsys):
    assert run(['hermite', '--m', '1', '--n', '1', '--rho', '2']) == 0
    assert capsys.readouterr().out.strip() == "z*zbar - 2"
    assert run(['hermite', '--m', '2', '--n', '1', '--rho', '0.5']) == 0
    assert capsys.readouterr().out.strip() == "z^2*zbar - z"


@pytest.mark.parametrize("z", ['1+1j', '1+1i'])
def test_hermite_evaluates_at_z(z, capsys):
    assert run(['hermite', '--m', '2', '--n', '1', '--rho', '2', '--z', z]) == 0
    assert capsys.readouterr().out.strip() == "-2-2i"


def test_hermite_value_as_json(capsys):
    assert run(['hermite', '--m', '1', '--n', '1', '--z', '2', '--json']) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj['rho'] == 1.0
    assert obj['value'] == {'re': 3.0, 'im': 0.0}


def test_hermite_bad_arguments(capsys):
    assert run(['hermite', '--m', '1', '--n', '1', '--z', 'abc']) == 2
    assert run(['hermite', '--m', '1', '--n', '1', '--rho', '-1']) == 1
    assert "rho must be positive" in capsys.readouterr().err


def test_no_command_prints_help(capsys):
    assert run([]) == 0
    assert "Examples:" in capsys.readouterr().out


def test_unknown_suite_is_usage_error():
    assert run(['verify', '--suite', 'bogus']) == 2


def test_verify_writes_report(tmp_path):
    out = tmp_path / "report.json"
    assert run(['verify', '--suite', 'hermite', '--cases', '2', '--seed', '7', '--out', str(out)]) == 0
    report = json.loads(out.read_text())
    assert report['command'] == 'verify'
    assert report['failures'] == []
    assert report['cases'] > 0
    assert report['suites'][0]['suite'] == 'hermite'
    assert 'workers' not in report['config']


def test_config_file_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# test settings\nseed = 5\ncases = 2\n")
    out = tmp_path / "a.json"
    assert run(['verify', '--suite', 'hermite', '--config', str(cfg), '--out', str(out)]) == 0
    assert json.loads(out.read_text())['config']['seed'] == 5

    out2 = tmp_path / "b.json"
    assert run(['verify', '--suite', 'hermite', '--config', str(cfg), '--seed', '9',
                '--out', str(out2)]) == 0
    echoed = json.loads(out2.read_text())['config']
    assert echoed['seed'] == 9
    assert echoed['cases'] == 2


def test_bad_config_file_is_usage_error(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert run(['hermite', '--m', '1', '--n', '0', '--config', str(cfg)]) == 2
    assert "unknown key" in capsys.readouterr().err


def test_bad_worker_count_is_usage_error():
    assert run(['hermite', '--m', '1', '--n', '0', '--workers', '0']) == 2


def test_fmt_command(tmp_path):
    table = tmp_path / "report.csv"
    summary = tmp_path / "summary.json"
    assert run(['fmt', '--dims', '1', '2', '--samples', '1000', '--seed', '1', '--out', str(table),
                '--summary', str(summary)]) == 0
    with open(table, newline='') as f:
        rows = list(csv.DictReader(f))
    assert [int(r['d']) for r in rows] == [1, 2]
    assert float(rows[0]['gap']) == pytest.approx(6.0)
    report = json.loads(summary.read_text())
    assert report['command'] == 'fmt'
    assert report['config']['seed'] == 1
    assert len(report['rows']) == 2


def test_fmt_sequence_file(tmp_path, capsys):
    source = tmp_path / "fixture.json"
    source.write_text(json.dumps({'family': 'gaussian_limit', 'dims': [3]}))
    table = tmp_path / "report.csv"
    assert run(['fmt', '--sequence', str(source), '--samples', '1000', '--seed', '1',
                '--out', str(table)]) == 0
    with open(table, newline='') as f:
        assert float(next(csv.DictReader(f))['gap']) == pytest.approx(2.0)
    assert json.loads(capsys.readouterr().out)['rows'][0]['d'] == 3

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(['fmt', '--sequence', str(bad), '--seed', '1']) == 2
    assert "invalid JSON" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ['ou', '--T', '5', '--steps', '50', '--replicas', '3'],
    ['fmt', '--dims', '1', '--samples', '1000'],
    ['verify', '--suite', 'hermite', '--cases', '1'],
])
def test_stochastic_commands_need_seed(argv, capsys):
    assert run(argv) == 2
    assert "needs a seed" in capsys.readouterr().err


def test_seed_from_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("seed = 4\n")
    assert run(['fmt', '--dims', '1', '--samples', '1000', '--config', str(cfg)]) == 0
    assert json.loads(capsys.readouterr().out)['config']['seed'] == 4


def test_ou_command(tmp_path):
    table = tmp_path / "results.csv"
    summary = tmp_path / "summary.json"
    assert run(['ou', '--T', '5', '--steps', '50', '--replicas', '4', '--seed', '3',
                '--out', str(table), '--summary', str(summary)]) == 0
    with open(table, newline='') as f:
        reader = csv.DictReader(f)
        assert reader.fieldnames == OU_COLUMNS
        assert len(list(reader)) == 4
    report = json.loads(summary.read_text())
    assert report['summary']['replicas'] == 4
    assert report['config']['lambda'] == 1.0


def test_ou_domain_error_exits_one(capsys):
    assert run(['ou', '--lambda', '-1', '--replicas', '2', '--seed', '1']) == 1
    assert "ERROR:" in capsys.readouterr().err
