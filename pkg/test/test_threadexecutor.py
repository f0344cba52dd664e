import threading

import pytest

from nqf.threadexecutor import ThreadExecutor


@pytest.mark.parametrize("threads", [1, 4])
def test_run_keeps_task_order(threads):
    def work(value, offset=0):
        if value == 3:
            raise ValueError(value)
        return value + offset

    data = [((value,), {"offset": 10}) for value in range(6)]
    results, errors = ThreadExecutor(threads, work).run(data)
    assert results == [10, 11, 12, None, 14, 15]
    assert [e.index for e in errors] == [3]
    assert isinstance(errors[0].wrapped, ValueError)
    assert errors[0].task_args == (3,)


@pytest.mark.parametrize("threads", [1, 3])
def test_map(threads):
    assert ThreadExecutor(threads, lambda x: x * x).map(range(7)) == [0, 1, 4, 9, 16, 25, 36]
    assert ThreadExecutor(threads, lambda x: x).map([]) == []


def test_map_raises_first_failure():
    def work(value):
        raise KeyError(value)

    with pytest.raises(KeyError) as excinfo:
        ThreadExecutor(3, work).map(["a", "b", "c"])
    assert excinfo.value.args == ("a",)


def test_init_fn_runs_once_per_thread():
    calls = []
    lock = threading.Lock()

    def init():
        with lock:
            calls.append(threading.current_thread().name)
        return {"scale": 2}

    results, errors = ThreadExecutor(2, lambda value, scale: value * scale, init_fn=init).run(
        [((value,), {}) for value in range(5)])
    assert errors == []
    assert results == [0, 2, 4, 6, 8]
    assert 1 <= len(calls) <= 2
