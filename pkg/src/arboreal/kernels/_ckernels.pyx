# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled versions of the scans in _pykernels; same contracts, same witnesses."""

cimport cython
import numpy as np

ctypedef long long i64
ctypedef unsigned char u8

DEF INF_RANK = -1


def u2_violation(rank):
    cdef const i64[:, ::1] r = np.ascontiguousarray(rank, dtype=np.int64)
    cdef Py_ssize_t n = r.shape[0]
    cdef Py_ssize_t x, y, z
    cdef i64 rxy, rxz, ryz
    for x in range(n):
        for y in range(x + 1, n):
            rxy = r[x, y]
            if rxy == INF_RANK:
                continue
            for z in range(n):
                if z == x or z == y:
                    continue
                rxz = r[x, z]
                ryz = r[y, z]
                if rxz == INF_RANK or ryz == INF_RANK:
                    continue
                if rxy > rxz and rxy > ryz:
                    return (x, y, z)
    return None


def u3_violation(rank):
    cdef const i64[:, ::1] r = np.ascontiguousarray(rank, dtype=np.int64)
    cdef Py_ssize_t n = r.shape[0]
    cdef Py_ssize_t x, y, z, u
    cdef i64 rxy, rxz, ryz, rxu, ryu
    cdef bint zbad
    for x in range(n):
        for y in range(x + 1, n):
            rxy = r[x, y]
            if rxy == INF_RANK:
                continue
            for z in range(n):
                if z == x or z == y:
                    continue
                rxz = r[x, z]
                ryz = r[y, z]
                if rxz == INF_RANK or ryz == INF_RANK:
                    continue
                zbad = rxz <= rxy or ryz <= rxy
                for u in range(z + 1, n):
                    if u == x or u == y or r[z, u] != INF_RANK:
                        continue
                    rxu = r[x, u]
                    ryu = r[y, u]
                    if rxu == INF_RANK or ryu == INF_RANK:
                        continue
                    if zbad or rxu <= rxy or ryu <= rxy:
                        return (x, y, z, u)
    return None


def find_gem(adj):
    cdef const u8[:, ::1] a = np.ascontiguousarray(adj, dtype=np.uint8)
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t x, p1, p2, p3, p4
    for x in range(n):
        for p2 in range(n):
            if not a[x, p2]:
                continue
            for p3 in range(n):
                if not a[p2, p3] or not a[x, p3]:
                    continue
                for p1 in range(n):
                    if not a[p2, p1] or p1 == p3 or p1 == x or not a[x, p1] or a[p3, p1]:
                        continue
                    for p4 in range(n):
                        if (not a[p3, p4] or p4 == p2 or p4 == x or p4 == p1
                                or not a[x, p4] or a[p2, p4] or a[p1, p4]):
                            continue
                        return (x, p1, p2, p3, p4)
    return None


def find_w5(adj):
    cdef const u8[:, ::1] a = np.ascontiguousarray(adj, dtype=np.uint8)
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t x, c1, c2, c3, c4
    for x in range(n):
        for c1 in range(n):
            if not a[x, c1]:
                continue
            for c2 in range(n):
                if not a[c1, c2] or c2 == x or not a[x, c2]:
                    continue
                for c4 in range(c2 + 1, n):
                    if not a[c1, c4] or c4 == x or not a[x, c4] or a[c2, c4]:
                        continue
                    for c3 in range(n):
                        if (not a[c2, c3] or c3 == c1 or c3 == x or not a[x, c3]
                                or not a[c4, c3] or a[c1, c3]):
                            continue
                        return (x, c1, c2, c3, c4)
    return None
