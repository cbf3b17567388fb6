import io
import json

import pytest

from congrue import oracle, scan
from congrue.congruence import Method
from congrue.errors import CheckpointError, DomainError
from congrue.scan import ScanConfig, load_checkpoint, run_scan


class Interrupted(Exception):
    pass


def stop_after(limit):
    def hook(n):
        if n == limit:
            raise Interrupted
    return hook


def scan_text(config):
    buf = io.StringIO()
    run_scan(config, stream=buf)
    return buf.getvalue()


def test_cells_order():
    cfg = ScanConfig((3, 5), bases=(5, 2), methods=("vantieghem", "trial", "wilson"))
    assert cfg.cells() == [(None, Method.WILSON), (None, Method.TRIAL), (2, Method.VANTIEGHEM), (5, Method.VANTIEGHEM)]


@pytest.mark.parametrize("kwargs", [
    dict(n_range=(2, 10)),                         # vantieghem needs n >= 3
    dict(n_range=(1, 10), methods=("wilson",)),
    dict(n_range=(10, 3)),
    dict(n_range=(3, 10), bases=(1,)),
    dict(n_range=(3, 10), jobs=0),
    dict(n_range=(3, 10), output_format="xml"),
    dict(n_range=(3, 10), methods=()),
])
def test_config_validation(kwargs):
    with pytest.raises(DomainError):
        ScanConfig(**kwargs)


def test_wilson_only_scan_may_start_at_two():
    assert ScanConfig((2, 5), methods=("wilson",)).n_range == (2, 5)


def test_scan_record_count_and_agreement():
    summary = run_scan(ScanConfig((3, 100), bases=(2, 3)), stream=io.StringIO())
    assert summary.records == 196
    assert summary.disagreements == 0


def test_scan_small_verdicts():
    lines = scan_text(ScanConfig((3, 10), bases=(3,))).splitlines()
    verdicts = {json.loads(x)["n"]: json.loads(x)["verdict"] for x in lines}
    assert [n for n, v in verdicts.items() if v] == [3, 5, 7]
    assert [n for n, v in verdicts.items() if not v] == [4, 6, 8, 9, 10]


def test_scan_order_is_n_then_m_then_method():
    cfg = ScanConfig((3, 12), bases=(2, 7), methods=tuple(Method))
    keys = [(r["n"], -1 if r["m"] is None else r["m"]) for r in map(json.loads, scan_text(cfg).splitlines())]
    assert keys == sorted(keys)


@pytest.mark.parametrize("fmt", ["json", "csv", "table"])
def test_worker_count_does_not_change_output(fmt):
    base = dict(n_range=(3, 80), bases=(2, 3), methods=("vantieghem", "wilson"), output_format=fmt)
    assert scan_text(ScanConfig(**base, jobs=1)) == scan_text(ScanConfig(**base, jobs=3))


def test_timings_flag():
    rows = [json.loads(x) for x in scan_text(ScanConfig((3, 6), timings=True)).splitlines()]
    assert all(isinstance(r["elapsed_ns"], int) for r in rows)


@pytest.mark.parametrize("fmt", ["json", "csv"])
@pytest.mark.parametrize("jobs", [1, 2])
def test_resume_is_byte_identical(tmp_path, fmt, jobs):
    fresh = tmp_path / "fresh"
    run_scan(ScanConfig((3, 120), bases=(2, 5), output_format=fmt), output_path=str(fresh))

    out, ckpt = tmp_path / "out", tmp_path / "ckpt.json"
    cfg = ScanConfig((3, 120), bases=(2, 5), output_format=fmt, checkpoint_path=str(ckpt), jobs=jobs)
    with pytest.raises(Interrupted):
        run_scan(cfg, output_path=str(out), on_n_complete=stop_after(57))
    assert load_checkpoint(str(ckpt))["last_completed_n"] == 57

    seen = []
    summary = run_scan(cfg, output_path=str(out), resume=True, on_n_complete=seen.append)
    assert seen[0] == 58  # nothing before the checkpoint is recomputed
    assert summary.resumed_from == 58
    assert summary.records == 2 * 118 and summary.disagreements == 0
    assert out.read_bytes() == fresh.read_bytes()
    assert load_checkpoint(str(ckpt))["last_completed_n"] == 120


def test_resume_discards_partial_tail(tmp_path):
    fresh = tmp_path / "fresh"
    run_scan(ScanConfig((3, 60)), output_path=str(fresh))
    out, ckpt = tmp_path / "out", tmp_path / "ckpt"
    cfg = ScanConfig((3, 60), checkpoint_path=str(ckpt))
    with pytest.raises(Interrupted):
        run_scan(cfg, output_path=str(out), on_n_complete=stop_after(20))
    with open(out, "a") as fh:
        fh.write('{"n": 21, "m": 2, "meth')  # killed mid-write
    run_scan(cfg, output_path=str(out), resume=True)
    assert out.read_bytes() == fresh.read_bytes()


def test_resume_after_completion_is_noop(tmp_path):
    out, ckpt = tmp_path / "out", tmp_path / "ckpt"
    cfg = ScanConfig((3, 30), checkpoint_path=str(ckpt))
    run_scan(cfg, output_path=str(out))
    before = out.read_bytes()
    seen = []
    summary = run_scan(cfg, output_path=str(out), resume=True, on_n_complete=seen.append)
    assert seen == [] and summary.records == 28
    assert out.read_bytes() == before


def test_corrupted_checkpoint_requires_restart(tmp_path):
    out, ckpt = tmp_path / "out", tmp_path / "ckpt"
    cfg = ScanConfig((3, 30), checkpoint_path=str(ckpt))
    run_scan(cfg, output_path=str(out))
    ckpt.write_text("{not json")
    with pytest.raises(CheckpointError):
        run_scan(cfg, output_path=str(out), resume=True)
    summary = run_scan(cfg, output_path=str(out), resume=True, restart=True)
    assert summary.resumed_from is None and summary.records == 28


def test_truncated_report_is_corruption(tmp_path):
    out, ckpt = tmp_path / "out", tmp_path / "ckpt"
    cfg = ScanConfig((3, 30), checkpoint_path=str(ckpt))
    with pytest.raises(Interrupted):
        run_scan(cfg, output_path=str(out), on_n_complete=stop_after(20))
    out.write_text(out.read_text()[:50])
    with pytest.raises(CheckpointError):
        run_scan(cfg, output_path=str(out), resume=True)


def test_config_change_forces_restart(tmp_path):
    out, ckpt = tmp_path / "out", tmp_path / "ckpt"
    with pytest.raises(Interrupted):
        run_scan(ScanConfig((3, 40), checkpoint_path=str(ckpt)), output_path=str(out),
                 on_n_complete=stop_after(10))
    other = ScanConfig((3, 40), bases=(3,), checkpoint_path=str(ckpt))
    summary = run_scan(other, output_path=str(out), resume=True)
    assert summary.resumed_from is None
    fresh = tmp_path / "fresh"
    run_scan(ScanConfig((3, 40), bases=(3,)), output_path=str(fresh))
    assert out.read_bytes() == fresh.read_bytes()


def test_checkpoint_needs_output_file(tmp_path):
    with pytest.raises(DomainError):
        run_scan(ScanConfig((3, 10), checkpoint_path=str(tmp_path / "c")), stream=io.StringIO())
    with pytest.raises(DomainError):
        run_scan(ScanConfig((3, 10), checkpoint_path=str(tmp_path / "c"), output_format="table"),
                 output_path=str(tmp_path / "o"))


def test_unwritable_checkpoint(tmp_path):
    cfg = ScanConfig((3, 10), checkpoint_path=str(tmp_path / "missing" / "ckpt"))
    with pytest.raises(CheckpointError):
        run_scan(cfg, output_path=str(tmp_path / "out"))


def test_disagreement_is_flagged(monkeypatch):
    real = oracle.sieve_flags

    def lying_sieve(limit):
        flags = real(limit)
        flags[9] = 1
        return flags

    monkeypatch.setattr(scan.oracle, "sieve_flags", lying_sieve)
    buf = io.StringIO()
    summary = run_scan(ScanConfig((3, 12), methods=("wilson",)), stream=buf)
    assert summary.disagreements == 1
    bad = [json.loads(x) for x in buf.getvalue().splitlines() if '"agreed_with_oracle": false' in x]
    assert [r["n"] for r in bad] == [9]
