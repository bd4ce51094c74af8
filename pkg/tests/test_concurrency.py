# tests/test_concurrency.py
import os
import threading
import time

import pytest

from hardyhermite.utils.concurrency import map_ordered, resolve_jobs


def test_resolve_jobs():
    assert resolve_jobs(3) == 3
    assert resolve_jobs(0) == (os.cpu_count() or 1)
    assert resolve_jobs(None) == (os.cpu_count() or 1)
    with pytest.raises(ValueError):
        resolve_jobs(-1)


def test_results_keep_input_order():
    def slow_square(k):
        time.sleep(0.002 * (10 - k))
        return k * k

    assert map_ordered(slow_square, range(10), jobs=4) == [k * k for k in range(10)]


def test_concurrency_limit():
    lock = threading.Lock()
    state = {"now": 0, "peak": 0}

    def work(_):
        with lock:
            state["now"] += 1
            state["peak"] = max(state["peak"], state["now"])
        time.sleep(0.01)
        with lock:
            state["now"] -= 1

    map_ordered(work, range(12), jobs=3)
    assert state["peak"] <= 3


def test_serial_and_empty():
    assert map_ordered(str, [], jobs=4) == []
    assert map_ordered(lambda k: k + 1, [1, 2], jobs=1) == [2, 3]
