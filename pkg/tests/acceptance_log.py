"""One status line per acceptance criterion, filled in as the criteria run."""

RESULTS: dict[int, str] = {}


def record(n: int, ok: bool, text: str) -> str:
    line = f"criterion {n} [{'PASS' if ok else 'FAIL'}] {text}"
    RESULTS[n] = line
    print(line)
    return line
