from __future__ import absolute_import

import threading

from six.moves import range, queue

from . import log

MYPY = False
if MYPY:
    from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple
    Task = Tuple[Tuple[Any, ...], Dict[str, Any]]

logger = log.get_logger(__name__)


class TaskError(Exception):
    """An exception raised by the work function for one task"""

    def __init__(self, index, args, wrapped):
        # type: (int, Tuple[Any, ...], Exception) -> None
        Exception.__init__(self, "Task %d %r failed: %s" % (index, args, wrapped))
        self.index = index
        self.task_args = args
        self.wrapped = wrapped


class Worker(threading.Thread):
    def __init__(self, tasks, executor, results, errors):
        super(Worker, self).__init__()
        self.daemon = True
        self.tasks = tasks
        self.executor = executor
        self.results = results
        self.errors = errors

    def run(self):
        init_data = self.executor.init_data()
        while True:
            try:
                index, task = self.tasks.get(False)
            except queue.Empty:
                return
            try:
                self.results[index] = self.executor.call(init_data, task)
            except Exception as e:
                logger.debug("Task %d %r failed: %s" % (index, task[0], e))
                self.errors.append(TaskError(index, task[0], e))
            finally:
                self.tasks.task_done()


class ThreadExecutor(object):
    """Run one function over a list of tasks on a pool of threads.

    Results are kept by task index, so the output never depends on which
    thread ran what. A thread_count of 1 runs everything on the calling
    thread.

    :param thread_count: Number of threads to use
    :param work_fn: Called once per task with the task's args and kwargs.
    :param init_fn: Optional function called once per thread, returning a dict of extra
                    kwargs for work_fn."""

    def __init__(self, thread_count, work_fn, init_fn=None):
        # type: (int, Callable[..., Any], Optional[Callable[[], Dict[str, Any]]]) -> None
        self.thread_count = max(1, thread_count)
        self.work_fn = work_fn
        self.init_fn = init_fn

    def init_data(self):
        # type: () -> Dict[str, Any]
        return (self.init_fn() if self.init_fn else None) or {}

    def call(self, init_data, task):
        # type: (Dict[str, Any], Task) -> Any
        args, task_kwargs = task
        kwargs = init_data.copy()
        kwargs.update(task_kwargs)
        return self.work_fn(*args, **kwargs)

    def run(self, data):
        # type: (Sequence[Task]) -> Tuple[List[Any], List[TaskError]]
        """Run every (args, kwargs) task; returns (results in task order, errors
        sorted by task index). The result of a failed task is None."""
        results = [None] * len(data)  # type: List[Any]
        errors = []  # type: List[TaskError]
        if self.thread_count == 1 or len(data) < 2:
            init_data = self.init_data()
            for index, task in enumerate(data):
                try:
                    results[index] = self.call(init_data, task)
                except Exception as e:
                    errors.append(TaskError(index, task[0], e))
            return results, errors

        tasks = queue.Queue()
        for item in enumerate(data):
            tasks.put(item)

        workers = [Worker(tasks, self, results, errors)
                   for _ in range(min(self.thread_count, len(data)))]
        for worker in workers:
            worker.start()
        for worker in workers:
            worker.join()
        errors.sort(key=lambda e: e.index)
        return results, errors

    def map(self, items):
        # type: (Sequence[Any]) -> List[Any]
        """work_fn(item) for each item, in order; the first failure is re-raised"""
        results, errors = self.run([((item,), {}) for item in items])
        if errors:
            raise errors[0].wrapped
        return results
