"""Derives the manufactured-solution forcing terms used in src/manufactured.cpp.

Run once; the printed C++ expressions are pasted into the source.
"""
import sympy as sp

x, y, t = sp.symbols("x y t", real=True)
rho_f, mu_f, rho_p, mu_p, lam, alpha, c0 = sp.symbols("rho_f mu_f rho_p mu_p lam alpha c0", positive=True)
kxx, kxy, kyy = sp.symbols("kxx kxy kyy", real=True)
pi = sp.pi
E = sp.exp(t)

vf = sp.Matrix([E * sp.cos(2 * pi * x) * sp.sin(2 * pi * y),
                E * (sp.cos(y) / (lam + 1) - sp.cos(2 * pi * y) * sp.sin(2 * pi * x))])
pf = E * sp.cos(pi * x) * sp.sin(pi * y) + lam * E * sp.sin(y) / (lam + 1)
up = vf
pp = E * sp.cos(pi * x) * sp.sin(pi * y)


def grad_v(v):
    return sp.Matrix([[sp.diff(v[0], x), sp.diff(v[0], y)], [sp.diff(v[1], x), sp.diff(v[1], y)]])


def eps(v):
    g = grad_v(v)
    return (g + g.T) / 2


def div_t(T):
    return sp.Matrix([sp.diff(T[0, 0], x) + sp.diff(T[0, 1], y), sp.diff(T[1, 0], x) + sp.diff(T[1, 1], y)])


I2 = sp.eye(2)
divu = sp.simplify(sp.diff(up[0], x) + sp.diff(up[1], y))
beta = alpha * pp - lam * divu
sig_f = 2 * mu_f * eps(vf) - pf * I2
f_f = rho_f * sp.diff(vf, t) - div_t(sig_f)
phi_f = sp.diff(vf[0], x) + sp.diff(vf[1], y)
sig_p = 2 * mu_p * eps(up) - beta * I2
vp = sp.diff(up, t)
f_p = rho_p * sp.diff(vp, t) - div_t(sig_p)
K = sp.Matrix([[kxx, kxy], [kxy, kyy]])
gp = sp.Matrix([sp.diff(pp, x), sp.diff(pp, y)])
flux = K * gp / mu_f
phi_p = c0 * sp.diff(pp, t) + alpha * sp.diff(divu, t) - (sp.diff(flux[0], x) + sp.diff(flux[1], y))

# Interface y = 0, n_f = (0,-1), n_p = (0,1).
g_gamma = (-vf[1] + vp[1] - flux[1]).subs(y, 0)

for name, e in [("divu", divu), ("beta", beta), ("f_f.x", f_f[0]), ("f_f.y", f_f[1]), ("phi_f", phi_f),
                ("f_p.x", f_p[0]), ("f_p.y", f_p[1]), ("phi_p", phi_p), ("g_gamma", g_gamma)]:
    print(name, "=", sp.cxxcode(sp.simplify(e)))
