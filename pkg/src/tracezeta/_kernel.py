"""Compiled inner loop for projective point counting.

Field elements are handled in the discrete-log domain: a nonzero element is
its exponent with respect to a primitive element, zero is the sentinel
``q - 1``, and addition goes through the Zech table.

Representatives are ordered by block: block ``i`` holds the points whose
first nonzero coordinate is position ``i`` (set to 1).  Inside a block the
free coordinates are the base-q digits of the local index, last coordinate
least significant, each digit an element code.  A "row" is a run of q
representatives that differ only in the last coordinate.
"""

from __future__ import annotations

import numba
import numpy as np


@numba.njit(cache=True, nogil=True)
def _point_on(coords, logs, nvars, zero, order, zech, exps, clogs, poly_ptr):
    npolys = poly_ptr.shape[0] - 1
    for pi in range(npolys):
        acc = zero
        for mi in range(poly_ptr[pi], poly_ptr[pi + 1]):
            val = clogs[mi]
            vanishes = False
            for j in range(nvars):
                e = exps[mi, j]
                if e > 0:
                    if coords[j] == 0:
                        vanishes = True
                        break
                    val += e * logs[j]
            if vanishes:
                continue
            val %= order
            if acc == zero:
                acc = val
            else:
                d = val - acc
                if d < 0:
                    d += order
                z = zech[d]
                if z == zero:
                    acc = zero
                else:
                    acc += z
                    if acc >= order:
                        acc -= order
        if acc != zero:
            return False
    return True


@numba.njit(cache=True, nogil=True)
def count_range(start, stop, nvars, q, logtab, zech, exps, clogs, poly_ptr, block_offsets):
    """Count representatives with index in [start, stop) lying on every polynomial."""
    zero = q - 1
    order = q - 1
    nmono = exps.shape[0]
    npolys = poly_ptr.shape[0] - 1
    last = nvars - 1
    coords = np.zeros(nvars, dtype=np.int64)
    logs = np.zeros(nvars, dtype=np.int64)
    base = np.zeros(nmono, dtype=np.int64)
    alive = np.zeros(nmono, dtype=np.bool_)
    # powlog[mi, c] = e_mi * log(c) mod order, e_mi the last-variable exponent;
    # zero coordinates with e_mi > 0 are flagged with the sentinel
    powlog = np.zeros((nmono, q), dtype=np.int64)
    for mi in range(nmono):
        e = exps[mi, last]
        powlog[mi, 0] = zero if e > 0 else 0
        for c in range(1, q):
            powlog[mi, c] = (e * logtab[c]) % order
    total = 0
    for i in range(nvars):
        lo = block_offsets[i]
        hi = block_offsets[i + 1]
        a = max(lo, start)
        b = min(hi, stop)
        if a >= b:
            continue
        for j in range(nvars):
            coords[j] = 0
            logs[j] = zero
        coords[i] = 1
        logs[i] = 0
        if i == last:
            if _point_on(coords, logs, nvars, zero, order, zech, exps, clogs, poly_ptr):
                total += 1
            continue
        row_first = (a - lo) // q
        row_last = (b - 1 - lo) // q
        for row in range(row_first, row_last + 1):
            local = row
            for j in range(last - 1, i, -1):
                c = local % q
                local //= q
                coords[j] = c
                logs[j] = logtab[c]
            for mi in range(nmono):
                val = clogs[mi]
                ok = True
                for j in range(last):
                    e = exps[mi, j]
                    if e > 0:
                        if coords[j] == 0:
                            ok = False
                            break
                        val += e * logs[j]
                alive[mi] = ok
                base[mi] = val % order
            c_lo = 0
            c_hi = q
            row_start = lo + row * q
            if row_start < a:
                c_lo = a - row_start
            if row_start + q > b:
                c_hi = b - row_start
            for c in range(c_lo, c_hi):
                on = True
                for pi in range(npolys):
                    acc = zero
                    for mi in range(poly_ptr[pi], poly_ptr[pi + 1]):
                        if not alive[mi]:
                            continue
                        pl = powlog[mi, c]
                        if pl == zero:
                            continue
                        val = base[mi] + pl
                        if val >= order:
                            val -= order
                        if acc == zero:
                            acc = val
                        else:
                            d = val - acc
                            if d < 0:
                                d += order
                            z = zech[d]
                            if z == zero:
                                acc = zero
                            else:
                                acc += z
                                if acc >= order:
                                    acc -= order
                    if acc != zero:
                        on = False
                        break
                if on:
                    total += 1
    return total
