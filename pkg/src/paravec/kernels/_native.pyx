# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled recurrence kernels. Same contract as paravec.kernels.pure."""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, tanh

cnp.import_array()

ACT_TANH = 0
ACT_RELU = 1
ACT_IDENTITY = 2


cdef inline double _sigmoid(double a) noexcept nogil:
    return 1.0 / (1.0 + exp(-a))


cdef inline void _mv_add(const double[:, ::1] A, const double[::1] x, double[::1] out) noexcept nogil:
    # out += A @ x
    cdef Py_ssize_t i, j
    cdef Py_ssize_t rows = A.shape[0], cols = A.shape[1]
    cdef double acc
    for i in range(rows):
        acc = 0.0
        for j in range(cols):
            acc += A[i, j] * x[j]
        out[i] += acc


cdef inline void _mtv_add(const double[:, ::1] A, const double[::1] x, double[::1] out) noexcept nogil:
    # out += A.T @ x
    cdef Py_ssize_t i, j
    cdef Py_ssize_t rows = A.shape[0], cols = A.shape[1]
    cdef double xi
    for i in range(rows):
        xi = x[i]
        for j in range(cols):
            out[j] += A[i, j] * xi


cdef inline void _outer_add(const double[::1] u, const double[::1] v, double[:, ::1] out) noexcept nogil:
    # out += outer(u, v)
    cdef Py_ssize_t i, j
    cdef double ui
    for i in range(u.shape[0]):
        ui = u[i]
        for j in range(v.shape[0]):
            out[i, j] += ui * v[j]


def rnn_forward(double[:, ::1] X, double[:, ::1] Wx, double[:, ::1] Wh, double[::1] b, int act):
    cdef Py_ssize_t n = X.shape[0], d = Wh.shape[0]
    cdef cnp.ndarray H_arr = np.empty((n, d))
    cdef double[:, ::1] H = H_arr
    cdef double[::1] a = np.empty(d)
    cdef double[::1] h = np.zeros(d)
    cdef Py_ssize_t t, i
    with nogil:
        for t in range(n):
            for i in range(d):
                a[i] = b[i]
            _mv_add(Wx, X[t], a)
            _mv_add(Wh, h, a)
            for i in range(d):
                if act == 0:
                    h[i] = tanh(a[i])
                elif act == 1:
                    h[i] = a[i] if a[i] > 0.0 else 0.0
                else:
                    h[i] = a[i]
                H[t, i] = h[i]
    return H_arr


def rnn_backward(double[:, ::1] X, double[:, ::1] Wx, double[:, ::1] Wh,
                 double[:, ::1] H, int act, double[::1] d_last):
    cdef Py_ssize_t n = X.shape[0], d = Wh.shape[0]
    cdef cnp.ndarray dWx_arr = np.zeros((Wx.shape[0], Wx.shape[1]))
    cdef cnp.ndarray dWh_arr = np.zeros((d, d))
    cdef cnp.ndarray db_arr = np.zeros(d)
    cdef cnp.ndarray dX_arr = np.empty((n, X.shape[1]))
    cdef double[:, ::1] dWx = dWx_arr, dWh = dWh_arr, dX = dX_arr
    cdef double[::1] db = db_arr
    cdef double[::1] dh = np.empty(d), da = np.empty(d)
    cdef Py_ssize_t t, i
    cdef double g
    for i in range(d):
        dh[i] = d_last[i]
    with nogil:
        for t in range(n - 1, -1, -1):
            for i in range(d):
                if act == 0:
                    g = 1.0 - H[t, i] * H[t, i]
                elif act == 1:
                    g = 1.0 if H[t, i] > 0.0 else 0.0
                else:
                    g = 1.0
                da[i] = dh[i] * g
                db[i] += da[i]
            _outer_add(da, X[t], dWx)
            if t > 0:
                _outer_add(da, H[t - 1], dWh)
            for i in range(dX.shape[1]):
                dX[t, i] = 0.0
            _mtv_add(Wx, da, dX[t])
            for i in range(d):
                dh[i] = 0.0
            _mtv_add(Wh, da, dh)
    return dWx_arr, dWh_arr, db_arr, dX_arr


def lstm_forward(double[:, ::1] X,
                 double[:, ::1] Wxi, double[:, ::1] Whi, double[:, ::1] Wci, double[::1] bi,
                 double[:, ::1] Wxf, double[:, ::1] Whf, double[:, ::1] Wcf, double[::1] bf,
                 double[:, ::1] Wxc, double[:, ::1] Whc, double[::1] bc,
                 double[:, ::1] Wxo, double[:, ::1] Who, double[:, ::1] Wco, double[::1] bo,
                 bint output_gate):
    cdef Py_ssize_t n = X.shape[0], d = Whi.shape[0]
    cdef cnp.ndarray H_arr = np.empty((n, d)), C_arr = np.empty((n, d))
    cdef cnp.ndarray I_arr = np.empty((n, d)), F_arr = np.empty((n, d))
    cdef cnp.ndarray U_arr = np.empty((n, d)), O_arr = np.ones((n, d))
    cdef double[:, ::1] H = H_arr, C = C_arr, I = I_arr, F = F_arr, U = U_arr, O = O_arr
    cdef double[::1] ai = np.empty(d), af = np.empty(d), au = np.empty(d), ao = np.empty(d)
    cdef double[::1] h = np.zeros(d), c = np.zeros(d)
    cdef Py_ssize_t t, i
    cdef double iv, fv, uv
    with nogil:
        for t in range(n):
            for i in range(d):
                ai[i] = bi[i]
                af[i] = bf[i]
                au[i] = bc[i]
            _mv_add(Wxi, X[t], ai)
            _mv_add(Whi, h, ai)
            _mv_add(Wci, c, ai)
            _mv_add(Wxf, X[t], af)
            _mv_add(Whf, h, af)
            _mv_add(Wcf, c, af)
            _mv_add(Wxc, X[t], au)
            _mv_add(Whc, h, au)
            for i in range(d):
                iv = _sigmoid(ai[i])
                fv = _sigmoid(af[i])
                uv = tanh(au[i])
                I[t, i] = iv
                F[t, i] = fv
                U[t, i] = uv
                c[i] = fv * c[i] + iv * uv
                C[t, i] = c[i]
            if output_gate:
                for i in range(d):
                    ao[i] = bo[i]
                _mv_add(Wxo, X[t], ao)
                _mv_add(Who, h, ao)
                _mv_add(Wco, c, ao)
                for i in range(d):
                    O[t, i] = _sigmoid(ao[i])
                    h[i] = O[t, i] * tanh(c[i])
                    H[t, i] = h[i]
            else:
                for i in range(d):
                    h[i] = tanh(c[i])
                    H[t, i] = h[i]
    return H_arr, C_arr, I_arr, F_arr, U_arr, O_arr


def lstm_backward(double[:, ::1] X,
                  double[:, ::1] Wxi, double[:, ::1] Whi, double[:, ::1] Wci, double[::1] bi,
                  double[:, ::1] Wxf, double[:, ::1] Whf, double[:, ::1] Wcf, double[::1] bf,
                  double[:, ::1] Wxc, double[:, ::1] Whc, double[::1] bc,
                  double[:, ::1] Wxo, double[:, ::1] Who, double[:, ::1] Wco, double[::1] bo,
                  bint output_gate,
                  double[:, ::1] H, double[:, ::1] C, double[:, ::1] I,
                  double[:, ::1] F, double[:, ::1] U, double[:, ::1] O,
                  double[::1] d_last):
    cdef Py_ssize_t n = X.shape[0], d = H.shape[1], dx = X.shape[1]
    cdef cnp.ndarray dWxi_a = np.zeros((d, dx)), dWhi_a = np.zeros((d, d)), dWci_a = np.zeros((d, d)), dbi_a = np.zeros(d)
    cdef cnp.ndarray dWxf_a = np.zeros((d, dx)), dWhf_a = np.zeros((d, d)), dWcf_a = np.zeros((d, d)), dbf_a = np.zeros(d)
    cdef cnp.ndarray dWxc_a = np.zeros((d, dx)), dWhc_a = np.zeros((d, d)), dbc_a = np.zeros(d)
    cdef cnp.ndarray dWxo_a = np.zeros((d, dx)), dWho_a = np.zeros((d, d)), dWco_a = np.zeros((d, d)), dbo_a = np.zeros(d)
    cdef cnp.ndarray dX_a = np.zeros((n, dx))
    cdef double[:, ::1] dWxi = dWxi_a, dWhi = dWhi_a, dWci = dWci_a
    cdef double[:, ::1] dWxf = dWxf_a, dWhf = dWhf_a, dWcf = dWcf_a
    cdef double[:, ::1] dWxc = dWxc_a, dWhc = dWhc_a
    cdef double[:, ::1] dWxo = dWxo_a, dWho = dWho_a, dWco = dWco_a
    cdef double[::1] dbi = dbi_a, dbf = dbf_a, dbc = dbc_a, dbo = dbo_a
    cdef double[:, ::1] dX = dX_a
    cdef double[::1] dh = np.empty(d), dc = np.empty(d), dc_carry = np.zeros(d)
    cdef double[::1] dai = np.empty(d), daf = np.empty(d), dau = np.empty(d), dao = np.empty(d)
    cdef double[::1] zeros = np.zeros(d)
    cdef double[::1] c_prev, h_prev
    cdef Py_ssize_t t, i
    cdef double tc
    for i in range(d):
        dh[i] = d_last[i]
    with nogil:
        for t in range(n - 1, -1, -1):
            c_prev = C[t - 1] if t > 0 else zeros
            h_prev = H[t - 1] if t > 0 else zeros
            if output_gate:
                for i in range(d):
                    tc = tanh(C[t, i])
                    dao[i] = dh[i] * tc * O[t, i] * (1.0 - O[t, i])
                    dc[i] = dh[i] * O[t, i] * (1.0 - tc * tc) + dc_carry[i]
                _mtv_add(Wco, dao, dc)
            else:
                for i in range(d):
                    tc = tanh(C[t, i])
                    dc[i] = dh[i] * (1.0 - tc * tc) + dc_carry[i]
            for i in range(d):
                dai[i] = dc[i] * U[t, i] * I[t, i] * (1.0 - I[t, i])
                daf[i] = dc[i] * c_prev[i] * F[t, i] * (1.0 - F[t, i])
                dau[i] = dc[i] * I[t, i] * (1.0 - U[t, i] * U[t, i])
                dbi[i] += dai[i]
                dbf[i] += daf[i]
                dbc[i] += dau[i]
            _outer_add(dai, X[t], dWxi)
            _outer_add(dai, h_prev, dWhi)
            _outer_add(dai, c_prev, dWci)
            _outer_add(daf, X[t], dWxf)
            _outer_add(daf, h_prev, dWhf)
            _outer_add(daf, c_prev, dWcf)
            _outer_add(dau, X[t], dWxc)
            _outer_add(dau, h_prev, dWhc)
            _mtv_add(Wxi, dai, dX[t])
            _mtv_add(Wxf, daf, dX[t])
            _mtv_add(Wxc, dau, dX[t])
            for i in range(d):
                dh[i] = 0.0
            _mtv_add(Whi, dai, dh)
            _mtv_add(Whf, daf, dh)
            _mtv_add(Whc, dau, dh)
            for i in range(d):
                dc_carry[i] = dc[i] * F[t, i]
            _mtv_add(Wci, dai, dc_carry)
            _mtv_add(Wcf, daf, dc_carry)
            if output_gate:
                for i in range(d):
                    dbo[i] += dao[i]
                _outer_add(dao, X[t], dWxo)
                _outer_add(dao, h_prev, dWho)
                _outer_add(dao, C[t], dWco)
                _mtv_add(Wxo, dao, dX[t])
                _mtv_add(Who, dao, dh)
    return (dWxi_a, dWhi_a, dWci_a, dbi_a,
            dWxf_a, dWhf_a, dWcf_a, dbf_a,
            dWxc_a, dWhc_a, dbc_a,
            dWxo_a, dWho_a, dWco_a, dbo_a,
            dX_a)
