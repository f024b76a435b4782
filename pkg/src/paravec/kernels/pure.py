"""Pure numpy recurrence kernels (fallback backend).

Both backends implement the same contract:

* ``rnn_forward(X, Wx, Wh, b, act)`` runs ``h_t = act(Wx x_t + Wh h_{t-1} + b)``
  with ``h_0 = 0`` over the rows of X and returns the (n, d) matrix of hidden
  states.
* ``rnn_backward`` backpropagates a gradient arriving only at the final hidden
  state and returns ``(dWx, dWh, db, dX)``.
* ``lstm_forward`` runs the peephole LSTM

      i_t = sigmoid(Wxi x_t + Whi h_{t-1} + Wci c_{t-1} + bi)
      f_t = sigmoid(Wxf x_t + Whf h_{t-1} + Wcf c_{t-1} + bf)
      u_t = tanh(Wxc x_t + Whc h_{t-1} + bc)
      c_t = f_t * c_{t-1} + i_t * u_t
      o_t = sigmoid(Wxo x_t + Who h_{t-1} + Wco c_t + bo)   (output gate)
      h_t = o_t * tanh(c_t)

  with ``h_0 = c_0 = 0``. When ``output_gate`` is false, ``o_t`` is fixed to 1
  (``h_t = tanh(c_t)``) and the four o-parameters are ignored placeholders.
  Returns the stacked per-step arrays ``(H, C, I, F, U, O)``.
* ``lstm_backward`` backpropagates a gradient at the final hidden state and
  returns the 15 parameter gradients followed by dX.

All arrays are C-contiguous float64; d is the hidden width and X is (n, d_in).
"""

import numpy as np

ACT_TANH = 0
ACT_RELU = 1
ACT_IDENTITY = 2


def _apply_act(a, act):
    if act == ACT_TANH:
        return np.tanh(a)
    if act == ACT_RELU:
        return np.maximum(a, 0.0)
    return a


def _act_deriv_from_output(h, act):
    # tanh' and relu' are recoverable from the activation output alone.
    if act == ACT_TANH:
        return 1.0 - h * h
    if act == ACT_RELU:
        return (h > 0.0).astype(np.float64)
    return np.ones_like(h)


def rnn_forward(X, Wx, Wh, b, act):
    n = X.shape[0]
    d = Wh.shape[0]
    ax = X @ Wx.T + b  # input projections for every step in one product
    H = np.empty((n, d))
    h = np.zeros(d)
    for t in range(n):
        h = _apply_act(ax[t] + Wh @ h, act)
        H[t] = h
    return H


def rnn_backward(X, Wx, Wh, H, act, d_last):
    n = X.shape[0]
    dWx = np.zeros_like(Wx)
    dWh = np.zeros_like(Wh)
    db = np.zeros_like(H[0])
    dX = np.empty_like(X)
    dh = d_last.copy()
    for t in range(n - 1, -1, -1):
        da = dh * _act_deriv_from_output(H[t], act)
        h_prev = H[t - 1] if t > 0 else None
        dWx += np.outer(da, X[t])
        if h_prev is not None:
            dWh += np.outer(da, h_prev)
        db += da
        dX[t] = Wx.T @ da
        dh = Wh.T @ da
    return dWx, dWh, db, dX


def _sigmoid(a):
    return 1.0 / (1.0 + np.exp(-a))


def lstm_forward(
    X, Wxi, Whi, Wci, bi, Wxf, Whf, Wcf, bf, Wxc, Whc, bc, Wxo, Who, Wco, bo, output_gate
):
    n = X.shape[0]
    d = Whi.shape[0]
    axi = X @ Wxi.T + bi
    axf = X @ Wxf.T + bf
    axc = X @ Wxc.T + bc
    axo = X @ Wxo.T + bo if output_gate else None
    H = np.empty((n, d))
    C = np.empty((n, d))
    I = np.empty((n, d))
    F = np.empty((n, d))
    U = np.empty((n, d))
    O = np.ones((n, d))
    h = np.zeros(d)
    c = np.zeros(d)
    for t in range(n):
        i = _sigmoid(axi[t] + Whi @ h + Wci @ c)
        f = _sigmoid(axf[t] + Whf @ h + Wcf @ c)
        u = np.tanh(axc[t] + Whc @ h)
        c = f * c + i * u
        if output_gate:
            o = _sigmoid(axo[t] + Who @ h + Wco @ c)
            h = o * np.tanh(c)
            O[t] = o
        else:
            h = np.tanh(c)
        I[t], F[t], U[t], C[t], H[t] = i, f, u, c, h
    return H, C, I, F, U, O


def lstm_backward(
    X,
    Wxi,
    Whi,
    Wci,
    bi,
    Wxf,
    Whf,
    Wcf,
    bf,
    Wxc,
    Whc,
    bc,
    Wxo,
    Who,
    Wco,
    bo,
    output_gate,
    H,
    C,
    I,
    F,
    U,
    O,
    d_last,
):
    n, d = H.shape
    dWxi = np.zeros_like(Wxi)
    dWhi = np.zeros_like(Whi)
    dWci = np.zeros_like(Wci)
    dbi = np.zeros(d)
    dWxf = np.zeros_like(Wxf)
    dWhf = np.zeros_like(Whf)
    dWcf = np.zeros_like(Wcf)
    dbf = np.zeros(d)
    dWxc = np.zeros_like(Wxc)
    dWhc = np.zeros_like(Whc)
    dbc = np.zeros(d)
    dWxo = np.zeros_like(Wxo)
    dWho = np.zeros_like(Who)
    dWco = np.zeros_like(Wco)
    dbo = np.zeros(d)
    dX = np.empty_like(X)

    dh = d_last.copy()
    dc_carry = np.zeros(d)
    for t in range(n - 1, -1, -1):
        c_prev = C[t - 1] if t > 0 else np.zeros(d)
        h_prev = H[t - 1] if t > 0 else np.zeros(d)
        tc = np.tanh(C[t])
        if output_gate:
            dao = dh * tc * O[t] * (1.0 - O[t])
            dc = dh * O[t] * (1.0 - tc * tc) + Wco.T @ dao + dc_carry
        else:
            dao = None
            dc = dh * (1.0 - tc * tc) + dc_carry
        dai = dc * U[t] * I[t] * (1.0 - I[t])
        daf = dc * c_prev * F[t] * (1.0 - F[t])
        dau = dc * I[t] * (1.0 - U[t] * U[t])

        dWxi += np.outer(dai, X[t])
        dWhi += np.outer(dai, h_prev)
        dWci += np.outer(dai, c_prev)
        dbi += dai
        dWxf += np.outer(daf, X[t])
        dWhf += np.outer(daf, h_prev)
        dWcf += np.outer(daf, c_prev)
        dbf += daf
        dWxc += np.outer(dau, X[t])
        dWhc += np.outer(dau, h_prev)
        dbc += dau
        dX[t] = Wxi.T @ dai + Wxf.T @ daf + Wxc.T @ dau
        dh = Whi.T @ dai + Whf.T @ daf + Whc.T @ dau
        dc_carry = dc * F[t] + Wci.T @ dai + Wcf.T @ daf
        if output_gate:
            dWxo += np.outer(dao, X[t])
            dWho += np.outer(dao, h_prev)
            dWco += np.outer(dao, C[t])
            dbo += dao
            dX[t] += Wxo.T @ dao
            dh += Who.T @ dao
    return (
        dWxi,
        dWhi,
        dWci,
        dbi,
        dWxf,
        dWhf,
        dWcf,
        dbf,
        dWxc,
        dWhc,
        dbc,
        dWxo,
        dWho,
        dWco,
        dbo,
        dX,
    )
