#  Copyright (c) 2022 Robert Lieck.
"""Process pool for independent solver runs (e.g. the resolutions of a convergence study)."""

import logging
import os
from multiprocessing import Pool
from typing import Callable, Iterable, List, Optional, Tuple

from tqdm import tqdm

logger = logging.getLogger(__name__)

THREADS_VARIABLE = "BGK_THREADS"


def worker_count(n_tasks: Optional[int] = None) -> int:
    """
    Number of worker processes: the CPU count, capped by the ``BGK_THREADS`` environment variable and by the number of
    tasks.
    """
    n = os.cpu_count() or 1
    cap = os.environ.get(THREADS_VARIABLE)
    if cap is not None:
        try:
            n = min(n, max(int(cap), 1))
        except ValueError:
            raise ValueError(f"{THREADS_VARIABLE} must be an integer, got '{cap}'")
    if n_tasks is not None:
        n = min(n, max(n_tasks, 1))
    return n


def _call_with_kwargs(func, args, kwargs):
    """unpacks positional and keyword arguments inside the worker"""
    return func(*args, **kwargs)


def starmap(func: Callable, tasks: Iterable[Tuple], parallel: bool = False, progress: bool = False,
            desc: Optional[str] = None, **kwargs) -> List:
    """
    Call ``func(*task, **kwargs)`` for every task and return the results in task order.

    :param func: a picklable (module-level) function
    :param tasks: tuples of positional arguments
    :param parallel: use a process pool
    :param progress: show a progress bar
    :param desc: label of the progress bar
    :param kwargs: keyword arguments passed to every call
    """
    tasks = list(tasks)
    if parallel and len(tasks) > 1:
        n_workers = worker_count(len(tasks))
        logger.debug(f"running {len(tasks)} tasks on {n_workers} processes")
        with Pool(processes=n_workers) as pool:
            iterator = pool.imap(_Task(func, kwargs), tasks)
            return list(tqdm(iterator, total=len(tasks), disable=not progress, desc=desc))
    return [_call_with_kwargs(func, task, kwargs) for task in tqdm(tasks, disable=not progress, desc=desc)]


class _Task:
    """picklable callable binding the function and keyword arguments for :meth:`Pool.imap`"""

    def __init__(self, func, kwargs):
        self.func = func
        self.kwargs = kwargs

    def __call__(self, args):
        return _call_with_kwargs(self.func, args, self.kwargs)
