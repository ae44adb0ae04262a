"""
Chunked parallel runner for Monte Carlo trials.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, TypeVar

from tqdm import tqdm

from core.bitcore import RandomSource, tie_stream

T = TypeVar('T')

# (chunk rng, trials in chunk) -> partial result
ChunkFn = Callable[[RandomSource, int], T]


class TrialRunner:
    """
    Run trials in fixed-size chunks on a thread pool.

    Chunk k always draws from rng.split("chunk", k), its random tie-breaks
    come from rng.split("chunk", k, "ties"), and partial results are returned
    in chunk order. The outcome does not depend on the number of workers or
    on scheduling.
    """

    def __init__(self, workers: int = 1, chunk_size: int = 1000, show_progress: bool = False):
        """
        Initialize trial runner.

        Args:
            workers: Number of worker threads
            chunk_size: Trials per chunk
            show_progress: Whether to display a tqdm progress bar
        """
        if workers < 1:
            raise ValueError(f"workers must be at least 1, got {workers}")
        if chunk_size < 1:
            raise ValueError(f"chunk_size must be at least 1, got {chunk_size}")
        self.workers = workers
        self.chunk_size = chunk_size
        self.show_progress = show_progress
        self.logger = logging.getLogger('ecgray')

    def chunk_sizes(self, trials: int) -> List[int]:
        full, rest = divmod(trials, self.chunk_size)
        return [self.chunk_size] * full + ([rest] if rest else [])

    def run(self, trials: int, fn: ChunkFn, rng: RandomSource,
            desc: str = "Running trials") -> List[T]:
        """
        Run `trials` trials through fn.

        Args:
            trials: Total number of trials
            fn: Called once per chunk with the chunk's RandomSource and size
            rng: Experiment randomness
            desc: Progress bar label

        Returns:
            Partial results in chunk order
        """
        if trials < 1:
            raise ValueError(f"trials must be at least 1, got {trials}")
        sizes = self.chunk_sizes(trials)
        self.logger.debug(f"{desc}: {trials} trials in {len(sizes)} chunks on {self.workers} workers")
        results: List[T] = [None] * len(sizes)

        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            futures = [executor.submit(_run_chunk, fn, rng.split('chunk', k), size)
                       for k, size in enumerate(sizes)]
            with tqdm(total=trials, desc=desc, unit="trial",
                      disable=not self.show_progress) as pbar:
                for k, future in enumerate(futures):
                    results[k] = future.result()
                    pbar.update(sizes[k])

        return results


def _run_chunk(fn: ChunkFn, chunk_rng: RandomSource, size: int):
    with tie_stream(chunk_rng.split('ties')):
        return fn(chunk_rng, size)
