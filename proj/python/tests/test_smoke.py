# Copyright 2026 The fbgame Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Feedback-rate control games over quantized CSI."""

import csv
import math

import pytest

import fbgame


def small_config(n=2, trials=50):
    cfg = fbgame.GameConfig()
    cfg.n_s = n
    cfg.n_t = n
    cfg.mc_trials = trials
    return cfg


def test_quantization_helpers():
    assert fbgame.distortion_from_rate(1.0) == 0.5
    mu, nu = fbgame.mu_nu(0.25)
    assert mu == 0.75
    assert math.isclose(nu, math.sqrt(0.1875))
    h, nq = fbgame.draw_channel(2, 3, 7)
    assert h.shape == (2, 3)
    q = fbgame.quantize_channel(h, nq, [0.0, 60.0])
    assert (q[0] == nq[0]).all()
    assert abs(q[1] - h[1]).max() < 1e-8


def test_precoder_identity():
    import numpy as np

    w, k = fbgame.build_precoder(np.eye(2, dtype=complex), 0.0)
    assert np.allclose(w, np.eye(2) / math.sqrt(2))
    assert math.isclose(k, 1 / math.sqrt(2))
    with pytest.raises(ArithmeticError):
        fbgame.build_precoder(np.ones((2, 2), dtype=complex), 0.0)


def test_access_models():
    b_ul, b_dl = fbgame.fdma_split(20.0, 0.01, [10.0] * 10)
    assert math.isclose(b_ul, 1.0) and math.isclose(b_dl, 19.0)
    with pytest.raises(ValueError):
        fbgame.fdma_split(20.0, 0.01, [2000.0])
    model = fbgame.CsmaModel()
    assert math.isclose(model.g0, fbgame.calibrate_g0(1.0, 0.1))
    assert fbgame.csma_throughput(0.0, model) == 0.0
    assert fbgame.csma_effective_rates([1.0, 1.0], model) == [0.0, 0.0]


def test_game_dynamics():
    game = fbgame.FeedbackGame(small_config())
    u = game.expected_utilities([1.0, 2.0])
    assert len(u) == 2 and all(x > 0 for x in u)
    rep = game.run_dynamics()
    assert rep["converged"]
    assert game.verify_nash(rep)
    assert game.run_dynamics()["rates"] == rep["rates"]
    with pytest.raises(ValueError):
        game.expected_utilities([1.0])


def test_config_json_round_trip():
    cfg = small_config()
    cfg.protocol = fbgame.Protocol.CSMA
    cfg.psi = 0.5
    back = fbgame.GameConfig.from_json(cfg.to_json())
    assert back.protocol == fbgame.Protocol.CSMA
    assert back.psi == 0.5
    with pytest.raises(ValueError):
        fbgame.GameConfig.from_json('{"unknown": 1}')


def test_sweep_and_centralized():
    cfg = small_config()
    res = fbgame.sweep_price(cfg, 0.1, 0.3, curve=True)
    assert [round(r["alpha"], 12) for r in res["records"]] == [0.0, 0.1, 0.2, 0.3]
    rates, total = fbgame.centralized_optimum(cfg)
    assert len(rates) == 2
    assert total >= max(r["sum_rate"] for r in res["records"]) * 0.99


def test_run_experiment(tmp_path):
    assert len(fbgame.list_experiments()) == 8
    out = tmp_path / "curve.csv"
    summary, warnings = fbgame.run_experiment("csma-curve", out)
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["g", "throughput"]
    assert len(rows) == 201
    assert summary and not warnings
