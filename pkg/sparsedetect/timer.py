import timeit


class Timer:
    """Accumulating wall-clock timer, used as a context manager"""

    def __init__(self, name):
        self.name = name
        self.total_time = 0
        self.last_time = 0
        self.calls = 0

    def __enter__(self):
        self.start_time = timeit.default_timer()
        return self

    def __exit__(self, type, value, traceback):
        self.last_time = timeit.default_timer() - self.start_time
        self.total_time += self.last_time
        self.calls += 1
