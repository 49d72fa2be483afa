# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled inner loops over Cayley tables.

Same API as :mod:`coverforge._pykernels`; see that module for the contracts.
"""
import numpy as np


def prepare(table):
    return np.ascontiguousarray(table, dtype=np.int32)


def closure(const int[:, ::1] table, gens, Py_ssize_t limit=0):
    cdef Py_ssize_t n = table.shape[0]
    cdef int[::1] gv = np.ascontiguousarray(gens, dtype=np.int32)
    cdef Py_ssize_t ng = gv.shape[0]
    mask = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] m = mask
    cdef int[::1] q = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t head = 0, tail = 1, k
    cdef int x, y
    q[0] = 0
    m[0] = 1
    while head < tail:
        x = q[head]
        head += 1
        for k in range(ng):
            y = table[x, gv[k]]
            if not m[y]:
                m[y] = 1
                q[tail] = y
                tail += 1
                if limit and tail > limit:
                    return None
    return mask


def extend_hom(const int[:, ::1] htab, hgens, const int[:, ::1] gtab, gimgs,
               bint injective=True):
    cdef Py_ssize_t nh = htab.shape[0], ngrp = gtab.shape[0]
    cdef int[::1] hg = np.ascontiguousarray(hgens, dtype=np.int32)
    cdef int[::1] gi = np.ascontiguousarray(gimgs, dtype=np.int32)
    cdef Py_ssize_t ng = hg.shape[0]
    phi_arr = np.full(nh, -1, dtype=np.int32)
    cdef int[::1] phi = phi_arr
    cdef unsigned char[::1] used = np.zeros(ngrp, dtype=np.uint8)
    cdef int[::1] q = np.empty(nh, dtype=np.int32)
    cdef Py_ssize_t head = 0, tail = 1, k
    cdef int x, y, v
    phi[0] = 0
    used[0] = 1
    q[0] = 0
    while head < tail:
        x = q[head]
        head += 1
        for k in range(ng):
            y = htab[x, hg[k]]
            v = gtab[phi[x], gi[k]]
            if phi[y] < 0:
                if injective and used[v]:
                    return None
                phi[y] = v
                used[v] = 1
                q[tail] = y
                tail += 1
            elif phi[y] != v:
                return None
    return phi_arr


def coset_labels(const int[:, ::1] table, sub):
    """Label right cosets N*x; returns (labels, representatives)."""
    cdef Py_ssize_t n = table.shape[0]
    cdef int[::1] sv = np.ascontiguousarray(sub, dtype=np.int32)
    cdef Py_ssize_t ns = sv.shape[0], k
    labels_arr = np.full(n, -1, dtype=np.int32)
    cdef int[::1] lab = labels_arr
    reps = []
    cdef int x, c = 0
    for x in range(n):
        if lab[x] < 0:
            for k in range(ns):
                lab[table[sv[k], x]] = c
            reps.append(x)
            c += 1
    return labels_arr, np.asarray(reps, dtype=np.int32)
