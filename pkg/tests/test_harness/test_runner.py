from posenc_wl.harness import runner
from posenc_wl.harness.runner import apply_pool


def test_in_process_map_keeps_order(settings):
    assert apply_pool(abs, [-3, 1, -2], jobs=1) == [3, 1, 2]


def test_worker_pool_keeps_order():
    assert apply_pool(abs, list(range(-6, 0)), jobs=2) == [6, 5, 4, 3, 2, 1]


def test_empty_input(settings):
    assert apply_pool(abs, [], jobs=4) == []


def test_workers_receive_the_parent_settings(settings, monkeypatch):
    monkeypatch.setattr(settings, "QUANT_STEP", 1e-9)
    runner._init_worker({"QUANT_STEP": 1e-6})
    assert settings.QUANT_STEP == 1e-6
