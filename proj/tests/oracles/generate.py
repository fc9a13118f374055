"""Independent reference values for the C++ tests.

Written against numpy/scipy only, with column-stacking vectorization and
operators built from scratch, so that it shares no code or conventions
with the library beyond the physical model. Run with python3 and paste the
printed numbers into the tests when the model definition changes.

Conventions shared with the library (physics, not implementation):
site 1 is the most significant qubit, |up> is basis index 0, s^a = sigma^a / 2,
H_spin = -2J sum_bonds s_i . s_j at the SU(2) point, field lambda s^x on the
drive site, L = s^- or exp(-i pi s^x / 2) s^- on the drive site.
"""

import numpy as np
import scipy.linalg as sla

sx = np.array([[0, 1], [1, 0]], dtype=complex) / 2
sy = np.array([[0, -1j], [1j, 0]], dtype=complex) / 2
sz = np.array([[1, 0], [0, -1]], dtype=complex) / 2
sp = np.array([[0, 1], [0, 0]], dtype=complex)
sm = sp.T.copy()


def site(op, k, n):
    out = np.eye(1, dtype=complex)
    for j in range(1, n + 1):
        out = np.kron(out, op if j == k else np.eye(2))
    return out


def chain_h(n, J, lam, drive):
    d = 2**n
    h = np.zeros((d, d), dtype=complex)
    for i in range(1, n):
        for a in (sx, sy, sz):
            h += -2 * J * site(a, i, n) @ site(a, i + 1, n)
    h += lam * site(sx, drive, n)
    return h


def jump(n, drive, rotated):
    l = site(sm, drive, n)
    if rotated:
        l = sla.expm(-1j * np.pi / 2 * site(sx, drive, n)) @ l
    return l


def liouvillian_colstack(h, ls, gamma):
    d = h.shape[0]
    i = np.eye(d)
    out = -1j * (np.kron(i, h) - np.kron(h.T, i))
    for l in ls:
        ld = l.conj().T @ l
        out += gamma * (np.kron(l.conj(), l) - 0.5 * np.kron(i, ld) - 0.5 * np.kron(ld.T, i))
    return out


def ness(lv, d):
    w, v = np.linalg.eig(lv)
    k = np.argmin(abs(w))
    rho = v[:, k].reshape(d, d, order="F")
    rho = rho / np.trace(rho)
    return (rho + rho.conj().T) / 2


def sqrtm_psd(a):
    w, v = np.linalg.eigh(a)
    return v @ np.diag(np.sqrt(np.clip(w, 0, None))) @ v.conj().T


def fidelity(r, s):
    q = sqrtm_psd(r)
    return np.real(np.trace(sqrtm_psd(q @ s @ q))) ** 2


def entropy(r):
    w = np.linalg.eigvalsh(r)
    w = w[w > 1e-14]
    return float(-(w * np.log(w)).sum())


def ptrace_keep_first(r, da, db):
    return np.trace(r.reshape(da, db, da, db), axis1=1, axis2=3)


def ptrace_keep_last(r, da, db):
    return np.trace(r.reshape(da, db, da, db), axis1=0, axis2=2)


def show(name, z):
    z = np.atleast_1d(np.asarray(z)).ravel()
    print(name, " ".join(f"{c.real:.17g}{c.imag:+.17g}i" if np.iscomplexobj(z) else f"{c:.17g}"
                        for c in z))


np.set_printoptions(precision=17)

# Two-level steady state away from the EP.
lam, gam = 0.3, 1.7
h = lam * sx
r = ness(liouvillian_colstack(h, [sm], gam), 2)
show("two_level_ness_0.3_1.7", r)

# Two-level Lindblad evolution from |down> at t = 1.3, lambda = gamma = 1.
lv = liouvillian_colstack(1.0 * sx, [sm], 1.0)
r0 = np.diag([0, 1]).astype(complex)
rt = (sla.expm(lv * 1.3) @ r0.reshape(-1, order="F")).reshape(2, 2, order="F")
show("two_level_lme_t1.3", rt)

# N = 3 chain, J = 1, lambda = 0.5, gamma = 1, drive on site 1.
n, d = 3, 8
h3 = chain_h(n, 1.0, 0.5, 1)
for rot in (False, True):
    lv = liouvillian_colstack(h3, [jump(n, 1, rot)], 1.0)
    r = ness(lv, d)
    show(f"n3_ness_purity_rot{int(rot)}", np.real(np.trace(r @ r)))
    r1 = ptrace_keep_first(r, 2, 4)
    r23 = ptrace_keep_last(r, 2, 4)
    show(f"n3_ness_mi_1_23_rot{int(rot)}", entropy(r1) + entropy(r23) - entropy(r))
    show(f"n3_ness_corr_13_rot{int(rot)}", np.trace(r @ site(sp, 1, n) @ site(sm, 3, n)))

# N = 3 Lindblad evolution from all-down at t = 2.5, unrotated jump.
lv = liouvillian_colstack(h3, [jump(n, 1, False)], 1.0)
psi = np.zeros(d, dtype=complex)
psi[-1] = 1
r0 = np.outer(psi, psi.conj())
rt = (sla.expm(lv * 2.5) @ r0.reshape(-1, order="F")).reshape(d, d, order="F")
show("n3_lme_t2.5_purity", np.real(np.trace(rt @ rt)))
show("n3_lme_t2.5_sz", [np.real(np.trace(rt @ site(sz, k, n))) for k in (1, 2, 3)])

# Non-Hermitian evolution, N = 3 rotated, from all-down at t = 2.5.
heff = h3 - 0.5j * jump(n, 1, True).conj().T @ jump(n, 1, True)
m = sla.expm(-1j * heff * 2.5)
rn = m @ r0 @ m.conj().T
rn /= np.trace(rn)
show("n3_nh_t2.5_purity", np.real(np.trace(rn @ rn)))
show("n3_nh_t2.5_corr_13", np.trace(rn @ site(sp, 1, n) @ site(sm, 3, n)))

# Fidelity of two fixed mixed qubit states.
a = np.array([[0.7, 0.2 - 0.1j], [0.2 + 0.1j, 0.3]])
b = np.array([[0.4, -0.25j], [0.25j, 0.6]])
show("fidelity_ab", fidelity(a, b))
show("entropy_a", entropy(a))
