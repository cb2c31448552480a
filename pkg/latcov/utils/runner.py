from __future__ import annotations

from collections.abc import Callable, Sequence
from multiprocessing import Pool
from typing import Generic, Self, TypeVar

import numpy as np

Result = TypeVar("Result")
Job = TypeVar("Job")
Worker = Callable[[tuple[int, int, Job]], Result]


class Runner(Generic[Job, Result]):
    """
    Utility class to run a function over independent jobs, in parallel or sequentially.
    Used to farm per-square (or per-class) work out to a process pool.

    Every job receives its index, a seed derived from the runner seed and the job payload.
    Results are returned in job order, so a parallel run and a sequential run produce
    identical outputs.

    Attributes:
        jobs: The payloads to process.
        n_workers: The number of worker processes used in parallel mode.
        seeds: The per-job seeds.
        results: The results of the jobs.

    Example:
        ::

            def worker(args):
                i, seed, square = args
                return census(square)

            if __name__ == "__main__":
                runner = Runner(jobs=squares, n_workers=4, seed=0)
                runner(worker, parallel=True)
                print(runner.results)
    """

    def __init__(self, *, jobs: Sequence[Job], n_workers: int = 1, seed: int = 0) -> None:
        """
        Initialize the runner.
        The per-job seeds are spawned from a numpy SeedSequence built on `seed`.

        Args:
            jobs: The payloads to process.
            n_workers: The number of worker processes to use in parallel mode.
            seed: The seed the per-job seeds derive from.
        """

        self.jobs = list(jobs)
        self.n_workers = max(1, n_workers)
        self.seeds: list[int] = [
            int(s) for s in np.random.SeedSequence(seed).generate_state(len(self.jobs), dtype=np.uint64)
        ]
        self.i = 0
        self.results: list[Result] = []

    def __call__(self, worker: Worker, parallel: bool = False) -> list[Result]:
        """
        Run the worker function in parallel or sequentially.

        Args:
            worker: The function to run; it must be picklable in parallel mode.
            parallel: Whether to run the function in parallel or sequentially.
        """

        parallel = parallel and self.n_workers > 1 and len(self.jobs) > 1
        self.results = self._parallel(worker) if parallel else self._sequential(worker)
        return self.results

    def __iter__(self) -> Self:
        self.i = 0
        return self

    def __next__(self) -> tuple[int, int, Job]:
        """
        Get the next job index, seed and payload.
        """

        if self.i >= len(self.jobs):
            raise StopIteration
        i = self.i
        self.i += 1
        return i, self.seeds[i], self.jobs[i]

    def _parallel(self, worker: Worker) -> list[Result]:
        results: list[Result] = []
        with Pool(processes=self.n_workers) as pool:
            multiple_results = pool.map_async(worker, list(self), callback=results.extend)
            multiple_results.wait()

        multiple_results.get()
        return results

    def _sequential(self, worker: Worker) -> list[Result]:
        return [worker(args) for args in self]
