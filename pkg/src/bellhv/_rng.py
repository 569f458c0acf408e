"""Counter-based uniform streams for ensemble simulation.

Every particle ``k`` of an ensemble gets its own substream, keyed by the
run seed combined with ``k`` through the splitmix64 finalizer.  The ``j``-th
draw of that substream is a pure function of ``(seed, stream, k, j)``, so a
run split into shards reproduces the serial run bit for bit.
"""

import numpy as np

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1


def _mix(z):
    # splitmix64 finalizer; uint64 arithmetic wraps modulo 2**64
    z = np.asarray(z, dtype=np.uint64)
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def _run_key(seed, stream):
    seed = int(seed) & _MASK64
    stream = int(stream) & _MASK64
    s = np.array([seed], dtype=np.uint64)
    t = np.array([stream], dtype=np.uint64)
    return _mix(s ^ _mix(t * _GAMMA + _GAMMA))


def substream_keys(seed, start, stop, stream=0):
    """Keys of particles ``start .. stop-1``."""
    k = np.arange(start, stop, dtype=np.uint64)
    return _mix(_run_key(seed, stream) ^ _mix(k))


def uniforms(seed, n, draws=1, stream=0, start=0):
    """Uniform variates in [0, 1), shape ``(n, draws)``.

    Row ``i`` holds the first ``draws`` values of particle ``start + i``'s
    substream.
    """
    if n < 0 or draws < 0:
        raise ValueError("n and draws must be nonnegative")
    keys = substream_keys(seed, start, start + n, stream)[:, None]
    j = np.arange(1, draws + 1, dtype=np.uint64)[None, :]
    bits = _mix(keys + j * _GAMMA)
    # top 53 bits -> double in [0, 1)
    return (bits >> np.uint64(11)).astype(np.float64) * (1.0 / 9007199254740992.0)


def hidden_variables(seed, n, draws=1, stream=0, start=0):
    """Uniform hidden variables on [-0.5, 0.5), shape ``(n, draws)``."""
    return uniforms(seed, n, draws, stream, start) - 0.5
