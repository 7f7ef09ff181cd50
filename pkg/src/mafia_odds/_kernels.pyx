# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Monte Carlo playout kernels.

Twin of ``_kernels_py``: identical transition rules and IEEE-754
comparisons on the same pre-drawn uniforms, so both backends return
identical outcome arrays for identical inputs.  Keep the two files in
lockstep.
"""

import numpy as np


def run_state_games(long n0, long m0, double[:, ::1] u):
    """Play classic day/night games from (n0, m0), one uniform per iteration."""
    cdef Py_ssize_t trials = u.shape[0]
    cdef Py_ssize_t steps = u.shape[1]
    out_arr = np.zeros(trials, dtype=np.uint8)
    cdef unsigned char[::1] out = out_arr
    cdef Py_ssize_t t, k
    cdef long n, m
    cdef double uk
    if m0 == 0:
        return out_arr
    if n0 < m0:
        out_arr[:] = 1
        return out_arr
    with nogil:
        for t in range(trials):
            n = n0
            m = m0
            for k in range(steps):
                uk = u[t, k]
                if uk * (n + m) < m:
                    # day vote removed a mafia member
                    m -= 1
                    if m == 0:
                        break  # civilians win; out[t] stays 0
                    n -= 1  # night
                    if n < m:
                        out[t] = 1
                        break
                else:
                    # day vote removed a civilian
                    n -= 1
                    if n < m:
                        out[t] = 1
                        break
                    n -= 1  # night
                    if n < m:
                        out[t] = 1
                        break
    return out_arr


def run_block_games(long n0, long m0, long r, long d, double[:, ::1] u):
    """Play generalized (r, d)-block games, one uniform per compound block."""
    cdef Py_ssize_t trials = u.shape[0]
    cdef Py_ssize_t steps = u.shape[1]
    out_arr = np.zeros(trials, dtype=np.uint8)
    cdef unsigned char[::1] out = out_arr
    cdef Py_ssize_t t, k
    cdef long n, m
    cdef double uk
    if m0 <= 0:
        return out_arr
    if n0 < m0:
        out_arr[:] = 1
        return out_arr
    with nogil:
        for t in range(trials):
            n = n0
            m = m0
            for k in range(steps):
                uk = u[t, k]
                if uk * (n + m) < n:
                    n -= r  # block removes r civilians
                else:
                    n -= r - d  # block removes d mafias and r-d civilians
                    m -= d
                if m <= 0:
                    break  # mafia extinct wins for civilians, before the majority rule
                if n < m:
                    out[t] = 1
                    break
    return out_arr


def vote_day_seats(double[:, ::1] u_votes, double[::1] tie_u):
    """One vote-level day round per trial; returns the eliminated seat."""
    cdef Py_ssize_t trials = u_votes.shape[0]
    cdef Py_ssize_t alive = u_votes.shape[1]
    if alive < 2:
        raise ValueError("a vote round needs at least 2 seats")
    if alive > 4096:
        raise ValueError("vote kernel supports at most 4096 seats")
    seats_arr = np.empty(trials, dtype=np.int64)
    cdef long long[::1] seats = seats_arr
    cdef long long counts[4096]
    cdef Py_ssize_t t, i
    cdef long long raw, top, n_top, rank, seen
    with nogil:
        for t in range(trials):
            for i in range(alive):
                counts[i] = 0
            for i in range(alive):
                raw = <long long>(u_votes[t, i] * (alive - 1))
                if raw >= i:
                    raw += 1
                counts[raw] += 1
            top = 0
            for i in range(alive):
                if counts[i] > top:
                    top = counts[i]
            n_top = 0
            for i in range(alive):
                if counts[i] == top:
                    n_top += 1
            rank = <long long>(tie_u[t] * n_top)
            seen = 0
            for i in range(alive):
                if counts[i] == top:
                    if seen == rank:
                        seats[t] = i
                        break
                    seen += 1
    return seats_arr
