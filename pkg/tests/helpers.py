"""Shared trace-building helpers for the test suite."""

from fretsem.trace import make_trace


def mk(**columns):
    """Build a trace from per-variable columns.

    String columns are bit strings ('1' = true); list columns are taken
    as-is (for numeric variables).  All columns must have equal length.

        mk(p="1010", q="0011")
    """
    lengths = {len(col) for col in columns.values()}
    assert len(lengths) == 1, "columns must have equal length"
    (length,) = lengths
    states = []
    for t in range(length):
        state = {}
        for name, col in columns.items():
            state[name] = col[t] == "1" if isinstance(col, str) else col[t]
        states.append(state)
    return make_trace(states)


def block_column(length, blocks):
    """Bit string with the given closed [a, b] blocks set to '1'."""
    bits = ["0"] * length
    for a, b in blocks:
        for t in range(a, b + 1):
            bits[t] = "1"
    return "".join(bits)
