from fractions import Fraction

import numpy as np
import pytest

import dyncache as dc


def worked_network(which):
    cfg = dc.make_config(6, "1/3", 3, 6, 4, Q=3)
    cfg.strategy = dc.Strategy.A if which == 1 else dc.Strategy.B
    cfg.per_tx_users = 3 if which == 1 else 4
    return cfg, dc.association_from_lengths([5, 4, 3], 4, cfg.per_tx_users)


@pytest.mark.parametrize("which, expected", [(1, Fraction(36, 7)), (2, Fraction(60, 11))])
def test_worked_networks_verify(which, expected):
    cfg, assoc = worked_network(which)
    sched = dc.full_schedule(cfg, assoc)
    assert dc.decode_check(sched)["ok"]
    assert dc.coverage_check(sched)["ok"]
    assert dc.count_dof(sched) == expected
    assert dc.dof_closed_form(cfg, assoc) == expected


def test_stream_fields():
    cfg, assoc = worked_network(1)
    sched = dc.full_schedule(cfg, assoc)
    first = sched.transmissions[0]
    assert first.kind == dc.TxKind.CC_A
    assert first.served_users == [1, 2, 3, 6, 7, 8, 10, 11, 12]
    stream = next(s for s in first.streams if s.user == 1)
    assert sorted(stream.nulling_set) == [2, 3, 10, 11, 12]
    assert sched.T_M == 8 and sched.T_U == 6


def test_dof_search():
    best = dc.dof_max_search([9, 8, 6, 5, 2], 8, Fraction(1, 5))
    assert float(best["dof"]) == pytest.approx(11.4286, abs=1e-4)
    assert dc.dof_max_search([6] * 5, 8, "1/5")["dof"] == 14
    assert dc.nocc_dof(30, 8) == 8
    assert dc.lemma1(10, 4) == (210, 210)


def test_invalid_config_raises():
    cfg = dc.make_config(6, "1/3", 3, 6, 4)
    cfg.profiles_per_tx = 7
    with pytest.raises(dc.ConstraintViolation):
        dc.validate_config(cfg)
    with pytest.raises(dc.Error):
        dc.association_from_lengths([0, 0], 1, 1)


def test_beamformer_single_user():
    tx = dc.nocc_schedule(*worked_network(1)).transmissions[0]
    h = dc.draw_channels(tx.served_users, 6, 3)
    assert all(v.shape == (6,) and np.iscomplexobj(v) for v in h.values())
    sol = dc.maxmin_solve(tx, h, 1.0, 10.0, 1.0)
    zf = dc.zf_precoders(tx, h, 10.0, 1.0)
    assert sol.min_rate >= zf.min_rate - 1e-3
    used = sum(np.vdot(w, w).real for w in sol.w)
    assert used == pytest.approx(10.0, rel=1e-3)


def test_symmetric_rate_is_deterministic():
    cfg, assoc = worked_network(1)
    cfg.tx_power = 10.0
    sched = dc.full_schedule(cfg, assoc)
    assert dc.symmetric_rate(sched, 2, 5) == dc.symmetric_rate(sched, 2, 5)


def test_cli_in_process(tmp_path):
    code, out, _ = dc.run_cli(["verify", "--example", "1", "--out", str(tmp_path)])
    assert code == 0
    assert (tmp_path / "verify.json").exists()
    assert dc.run_cli(["bogus"])[0] == 2
