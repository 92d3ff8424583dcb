import logging
import os
import queue
import selectors
import threading
import typing
from collections.abc import Callable
from collections.abc import Iterable

logger = logging.getLogger(__name__)

T = typing.TypeVar('T')


def default_workers() -> int:
    env = os.environ.get('HCONV_WORKERS')
    if env:
        try:
            n = int(env)
        except ValueError:
            logger.warning('ignoring HCONV_WORKERS=%r, not an integer', env)
        else:
            return max(n, 1)
    return min(32, (os.cpu_count() or 1) + 4)


class Future(typing.Generic[T]):
    def __init__(self) -> None:
        self.result: T | None = None
        self.exc: BaseException | None = None
        self.done: bool = False

    def set_result(self, value: T) -> None:
        self.result = value
        self.done = True

    def set_exception(self, exc: BaseException) -> None:
        self.exc = exc
        self.done = True

    def unwrap(self) -> T:
        if self.exc:
            raise self.exc
        return typing.cast(T, self.result)


class WorkerPool:
    """Runs cells on short-lived threads and wakes the caller through a pipe."""

    def __init__(self, max_workers: int | None = None):
        self.max_workers = max_workers or default_workers()
        self.queue = queue.Queue()
        self.workers = []
        self.pending = 0

    def __enter__(self) -> 'WorkerPool':
        self.r, self.w = os.pipe()
        return self

    def __exit__(self, *args, **kwargs):
        for worker in self.workers:
            worker.join()
        os.close(self.r)
        os.close(self.w)

    def _worker(self) -> None:
        while True:
            try:
                fn = self.queue.get(block=False)
            except queue.Empty:
                break
            fn()
            self.queue.task_done()

    def submit(self, fn: Callable[..., T], *args, **kwargs) -> Future[T]:
        future = Future()

        def wrapper() -> None:
            try:
                result = fn(*args, **kwargs)
            except Exception as e:
                future.set_exception(e)
            else:
                future.set_result(result)
            finally:
                os.write(self.w, b'\0')

        self.queue.put(wrapper)
        self.pending += 1
        self._spawn()
        return future

    def _spawn(self) -> None:
        self.workers = [w for w in self.workers if w.is_alive()]
        if len(self.workers) < self.max_workers and not self.queue.empty():
            worker = threading.Thread(target=self._worker, daemon=True)
            self.workers.append(worker)
            worker.start()

    def wait(self) -> None:
        with selectors.DefaultSelector() as sel:
            sel.register(self.r, selectors.EVENT_READ)
            while self.pending:
                if sel.select(timeout=0.05):
                    self.pending -= len(os.read(self.r, self.pending))
                # a worker may have quit right after the last submit
                self._spawn()


def map_ordered(
    fn: Callable[[T], typing.Any],
    items: Iterable[T],
    max_workers: int | None = None,
) -> list:
    """Like map(), but on a WorkerPool. Results keep the order of items."""
    items = list(items)
    with WorkerPool(max_workers) as pool:
        futures = [pool.submit(fn, item) for item in items]
        logger.debug('%d cells on up to %d workers', len(futures), pool.max_workers)
        pool.wait()
    return [future.unwrap() for future in futures]
