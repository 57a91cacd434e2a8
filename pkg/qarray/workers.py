import os
from concurrent.futures import ThreadPoolExecutor

from termcolor import colored
from tqdm import tqdm

THREADS_ENV = 'QARRAY_THREADS'


def thread_count():
    """Worker threads for sweeps, capped by QARRAY_THREADS when it is set."""
    default = os.cpu_count() or 1
    value = os.environ.get(THREADS_ENV, '').strip()
    if not value:
        return default
    try:
        return max(1, int(value))
    except ValueError:
        return default


def parallel_map(fn, items, desc=None, progress=False):
    """Applies fn to every item on a thread pool and returns the results in input order."""
    items = list(items)
    workers = min(thread_count(), max(1, len(items)))
    label = 'Computing {}'.format(colored(desc or 'grid', 'cyan', attrs=['bold']))
    with tqdm(ncols=100, desc=label, total=len(items), disable=not progress) as pbar:
        if workers == 1:
            results = []
            for item in items:
                results.append(fn(item))
                pbar.update(1)
            return results
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = []
            for result in pool.map(fn, items):
                results.append(result)
                pbar.update(1)
            return results
