"""
Tests for the command-line interface and its exit codes.
"""
import json

import pytest

import main as cli
from main import EXIT_ACCEPTANCE, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, main


@pytest.fixture(autouse=True)
def isolated(fresh_logger, monkeypatch, tmp_path):
    monkeypatch.delenv('ECGRAY_SEED', raising=False)
    monkeypatch.chdir(tmp_path)


def run(capsys, *argv):
    code = main(['--config', 'absent.yaml', *argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_encode(capsys):
    code, out, _ = run(capsys, 'encode', '--codec', 'unary:m=5', '--value', '3')
    assert code == EXIT_OK
    assert out == '11100\n'


def test_decode(capsys):
    code, out, _ = run(capsys, 'decode', '--codec', 'gray:inner=pairtriple',
                       '--input', '000100' + '0' * 24)
    assert code == EXIT_OK
    assert out.strip() == '1'


def test_decode_rejects_non_bits(capsys):
    code, _, err = run(capsys, 'decode', '--codec', 'unary:m=5', '--input', '01201')
    assert code == EXIT_USAGE
    assert 'usage error' in err


def test_unknown_codec(capsys):
    code, _, _ = run(capsys, 'encode', '--codec', 'hamming:n=7', '--value', '1')
    assert code == EXIT_USAGE


def test_value_out_of_range(capsys):
    code, _, err = run(capsys, 'encode', '--codec', 'unary:m=5', '--value', '9')
    assert code == EXIT_DOMAIN
    assert 'ERROR' in err


def test_missing_command():
    with pytest.raises(SystemExit) as excinfo:
        main([])
    assert excinfo.value.code == EXIT_USAGE


def test_bad_option_value():
    with pytest.raises(SystemExit) as excinfo:
        main(['encode', '--codec', 'unary:m=5', '--value', 'three'])
    assert excinfo.value.code == EXIT_USAGE


def test_countcodewords(capsys, data_dir):
    code, out, _ = run(capsys, 'countcodewords', '--matrix', str(data_dir / 'small_generator.txt'),
                       '--t', '3', '--verify')
    assert code == EXIT_OK
    assert out.splitlines() == ['6', 'brute_force=6']


def test_countcodewords_mismatch(capsys, data_dir, monkeypatch):
    monkeypatch.setattr(cli, 'brute_force_count', lambda t, generator: -1)
    code, _, err = run(capsys, 'countcodewords', '--matrix', str(data_dir / 'small_generator.txt'),
                       '--t', '3', '--verify')
    assert code == EXIT_ACCEPTANCE
    assert 'Mismatch' in err


def test_countcodewords_missing_matrix(capsys):
    code, _, _ = run(capsys, 'countcodewords', '--matrix', 'nope.txt', '--t', '3')
    assert code == EXIT_USAGE


def test_distance(capsys):
    code, out, _ = run(capsys, 'distance', '--codec', 'pairtriple')
    assert code == EXIT_OK
    assert out.strip() == '3'


def test_failure(capsys):
    code, out, _ = run(capsys, 'failure', '--codec', 'repetition:d=3', '--p', '0.1')
    assert code == EXIT_OK
    lines = dict(line.split('=') for line in out.splitlines())
    assert float(lines['exact']) == pytest.approx(0.028)
    assert float(lines['lower_bound']) == pytest.approx(0.028)


def test_failure_bad_p(capsys):
    code, _, _ = run(capsys, 'failure', '--codec', 'repetition:d=3', '--p', '0.7')
    assert code == EXIT_DOMAIN


def simulate(capsys, *extra):
    return run(capsys, '--seed', '5', 'simulate', '--codec', 'gray:inner=pairtriple',
               '--trials', '300', '--grid-trials', '20', '--t-values', '1,2', *extra)


def test_simulate_is_reproducible(capsys):
    first = simulate(capsys)
    second = simulate(capsys)
    assert first[0] == EXIT_OK
    assert first[1] == second[1]
    lines = first[1].splitlines()
    assert lines[0] == '# schema_version=1'
    assert '# seed=5' in lines
    assert lines[-1].endswith(',1')


def test_simulate_workers_do_not_change_output(capsys):
    single = simulate(capsys)
    threaded = run(capsys, '--seed', '5', '--workers', '3', 'simulate',
                   '--codec', 'gray:inner=pairtriple', '--trials', '300',
                   '--grid-trials', '20', '--t-values', '1,2')
    assert single[1] == threaded[1]


def test_simulate_seed_after_command(capsys):
    expected = simulate(capsys)[1]
    args = ('simulate', '--codec', 'gray:inner=pairtriple', '--trials', '300',
            '--grid-trials', '20', '--t-values', '1,2', '--seed', '5')
    code, out, _ = run(capsys, *args)
    assert code == EXIT_OK
    assert out == expected
    assert run(capsys, '--seed', '9', *args)[1] == expected


def test_simulate_json_file(capsys, tmp_path):
    output = tmp_path / 'reports' / 'tail.json'
    code, out, _ = simulate(capsys, '--format', 'json', '--output', str(output))
    assert code == EXIT_OK
    assert out == ''
    data = json.loads(output.read_text())
    assert data['seed'] == 5
    assert data['config']['t_values'] == [1, 2]
    assert [row['t'] for row in data['rows']] == [1, 2]


def test_simulate_bad_p(capsys):
    code, _, _ = simulate(capsys, '--p', '0.5')
    assert code == EXIT_DOMAIN


def test_hist_build_and_query(capsys, data_dir, tmp_path):
    sketch = tmp_path / 'sketch.bin'
    code, out, _ = run(capsys, 'hist', 'build', '--eps', '2', '--universe', '65536',
                       '--input', str(data_dir / 'counts.csv'), '--output', str(sketch))
    assert code == EXIT_OK
    assert out.strip().endswith(f'bits written to {sketch}')
    assert sketch.exists()

    code, out, _ = run(capsys, 'hist', 'query', '--sketch', str(sketch), '--element', '42')
    assert code == EXIT_OK
    assert float(out) >= 0.0

    code, out, _ = run(capsys, 'hist', 'query', '--sketch', str(sketch), '--element', '3', '17')
    assert code == EXIT_OK
    assert [line.split()[0] for line in out.splitlines()] == ['3', '17']


def test_hist_build_rejects_large_q(capsys, data_dir, tmp_path):
    code, _, err = run(capsys, 'hist', 'build', '--eps', '2', '--universe', '65536',
                       '--input', str(data_dir / 'counts.csv'),
                       '--output', str(tmp_path / 's.bin'), '--q', '0.2')
    assert code == EXIT_DOMAIN
    assert 'violated q <= 1/20' in err


def test_hist_build_missing_input(capsys, tmp_path):
    code, _, _ = run(capsys, 'hist', 'build', '--eps', '2', '--universe', '65536',
                     '--input', 'absent.csv', '--output', str(tmp_path / 's.bin'))
    assert code == EXIT_USAGE


def test_hist_query_missing_sketch(capsys):
    code, _, _ = run(capsys, 'hist', 'query', '--sketch', 'absent.bin', '--element', '1')
    assert code == EXIT_USAGE


def test_hist_empty_input_queries_zero(capsys, tmp_path):
    counts = tmp_path / 'empty.csv'
    counts.write_text('element,count\n')
    sketch = tmp_path / 'empty.bin'
    code, _, _ = run(capsys, 'hist', 'build', '--eps', '2', '--universe', '256', '--q', '0',
                     '--debug', '--input', str(counts), '--output', str(sketch))
    assert code == EXIT_OK
    code, out, _ = run(capsys, 'hist', 'query', '--sketch', str(sketch), '--element', '9')
    assert code == EXIT_OK
    assert float(out) == 0.0


def test_hist_build_seed_after_command(capsys, data_dir, tmp_path):
    def build_with(seed, name):
        path = tmp_path / name
        code, _, _ = run(capsys, 'hist', 'build', '--eps', '2', '--universe', '65536',
                         '--input', str(data_dir / 'counts.csv'), '--output', str(path),
                         '--seed', seed)
        assert code == EXIT_OK
        return path.read_bytes()

    assert build_with('3', 'a.bin') == build_with('3', 'b.bin')
    assert build_with('3', 'a.bin') != build_with('4', 'c.bin')
