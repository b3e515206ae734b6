"""Collects one line per acceptance criterion for the terminal summary."""
import contextlib
import time

LINES: list[str] = []


@contextlib.contextmanager
def criterion(label: str, title: str):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        status = "PASS"
    finally:
        line = f"{status}  {label:<3} {title} ({time.perf_counter() - start:.1f}s)"
        LINES.append(line)
        print(line)
