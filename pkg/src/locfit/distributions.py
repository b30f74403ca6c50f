"""Distribution families and the constructions built on them.

Every family is described by a :class:`FamilyDescriptor` bundling its
parameter domains, log-density, cdf, quantile and a default grid of initial
parameters.  All densities are evaluated in log space end to end; the heavy
families (Kw-CWG, OLL-GG) underflow quickly in linear space.

Built-in registry (exact names used by the CLI and reports)::

    weibull   f(x) = (k/l) (x/l)^(k-1) exp[-(x/l)^k]             params (l, k)
    gamma     f(x) = x^(a-1) exp(-x/t) / (t^a Gamma(a))          params (a, t)
    ggamma    f(x) = b x^(bk-1) exp[-(x/a)^b] / (a^bk Gamma(k))  params (a, b, k)
    eweibull  f(x) = (s v x^(s-1) / m^s) e^(-(x/m)^s)
                       (1 - e^(-(x/m)^s))^(v-1)                  params (s, v, m)
    normal    gaussian on the whole real line                    params (mu, sigma)
    tnormal   gaussian renormalized to x > 0                     params (mu, sigma)
    lnormal   lognormal                                          params (mu, sigma)
    kwcwg     Kumaraswamy complementary Weibull geometric        params (alpha, beta, gamma, a, b)
    ollgg     odd log-logistic generalized gamma                 params (alpha, tau, k, lambda)

kwcwg and ollgg are generator compositions: with w = exp[-(gamma x)^beta] the
kwcwg cdf is 1 - [1 - G^a]^b over the base cdf
G = alpha (1 - w) / (alpha + (1 - alpha) w), and with G the generalized gamma
cdf the ollgg cdf is G^lam / (G^lam + (1 - G)^lam).  Both therefore have
closed-form cdfs and quantiles.
"""

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import special as _sp

from .errors import ContractError, DegenerateTruncationError, DomainError
from .special import log1mexp, log_inc_gamma_lower, log_inc_gamma_upper

__all__ = [
    "Interval",
    "SampleStats",
    "FamilyDescriptor",
    "FAMILY_NAMES",
    "FAMILIES",
    "get_family",
    "sample_stats",
    "compose_cdf",
    "truncate_at",
    "shift_by",
    "fix_params",
    "uniform01_family",
    "beta_family",
]

_LOG_2PI = math.log(2.0 * math.pi)

QUANTILE_PROB_TOL = 1e-10
QUANTILE_MAX_ITER = 200


@dataclass(frozen=True)
class Interval:
    """Open or half-open real interval used as a parameter domain."""

    lower: float
    upper: float = math.inf
    lower_open: bool = True
    upper_open: bool = True

    def contains(self, value):
        v = float(value)
        if not math.isfinite(v):
            return False
        if v < self.lower or (self.lower_open and v == self.lower):
            return False
        if v > self.upper or (self.upper_open and v == self.upper):
            return False
        return True

    def __str__(self):
        lo = "(" if self.lower_open else "["
        hi = ")" if self.upper_open else "]"
        return f"{lo}{self.lower:g}, {self.upper:g}{hi}"


POSITIVE = Interval(0.0)
UNIT = Interval(0.0, 1.0)
REAL = Interval(-math.inf, math.inf)


@dataclass(frozen=True)
class SampleStats:
    """Moments a data-adaptive initial-parameter grid is anchored to."""

    mean: float = 1.0
    std: float = 1.0
    scale: float = 1.0
    log_mean: float = 0.0
    log_std: float = 1.0


UNIT_STATS = SampleStats()


def sample_stats(values):
    """Summarize a sample for grid construction; degenerate inputs get guards."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        return UNIT_STATS
    mean = float(v.mean())
    std = float(v.std(ddof=1)) if v.size > 1 else 0.0
    if std <= 0.0:
        std = max(abs(mean), 1.0) * 1e-3
    scale = mean if mean > 1e-300 else (std if std > 1e-300 else 1.0)
    if np.all(v > 0.0):
        lv = np.log(v)
        log_mean = float(lv.mean())
        log_std = float(lv.std(ddof=1)) if v.size > 1 else 0.0
        if log_std <= 0.0:
            log_std = 1e-3
    else:
        log_mean, log_std = 0.0, 1.0
    return SampleStats(mean=mean, std=std, scale=scale, log_mean=log_mean, log_std=log_std)


_ROLE_VALUES = {
    "shape": lambda s: (0.5, 1.0, 2.0),
    "scale": lambda s: (0.5 * s.scale, s.scale, 2.0 * s.scale),
    "inv_scale": lambda s: (0.5 / s.scale, 1.0 / s.scale, 2.0 / s.scale),
    "unit": lambda s: (0.25, 0.5, 0.75),
    "center": lambda s: (s.mean - s.std, s.mean, s.mean + s.std),
    "disp": lambda s: (0.5 * s.std, s.std, 2.0 * s.std),
    "log_center": lambda s: (s.log_mean - s.log_std, s.log_mean, s.log_mean + s.log_std),
    "log_disp": lambda s: (0.5 * s.log_std, s.log_std, 2.0 * s.log_std),
}


def _grid_from_roles(roles):
    def build(stats):
        axes = [_ROLE_VALUES[r](stats) for r in roles]
        return tuple(itertools.product(*axes))

    return build


@dataclass(frozen=True)
class FamilyDescriptor:
    """A named distribution family: domains, log-pdf, cdf, quantile, grid.

    Descriptors are immutable and safe to share between threads; every
    operation is a pure function of (params, argument).
    """

    name: str
    param_names: tuple
    param_domains: tuple
    log_pdf_fn: Callable
    cdf_fn: Callable
    quantile_fn: Optional[Callable] = None
    support_lower: float = 0.0
    support_upper: float = math.inf
    grid_fn: Callable = _grid_from_roles(())
    default_grid: tuple = field(default=())

    def __post_init__(self):
        if len(self.param_names) != len(self.param_domains):
            raise ContractError(f"{self.name}: param_names/param_domains length mismatch")
        if not self.default_grid:
            object.__setattr__(self, "default_grid", self.make_grid(None))
        for entry in self.default_grid:
            self.check_params(entry)

    @property
    def param_count(self):
        return len(self.param_names)

    def check_params(self, params):
        if len(params) != self.param_count:
            raise DomainError(
                f"{self.name} expects {self.param_count} parameters "
                f"{self.param_names}, got {len(params)}"
            )
        for pname, dom, value in zip(self.param_names, self.param_domains, params):
            if not dom.contains(value):
                raise DomainError(f"{self.name}: {pname}={value!r} outside domain {dom}")

    def make_grid(self, sample=None):
        """Initial-parameter grid anchored to the sample's scale (unit scale if None)."""
        stats = UNIT_STATS if sample is None else sample_stats(sample)
        entries = []
        for entry in self.grid_fn(stats):
            ok = all(d.contains(v) for d, v in zip(self.param_domains, entry))
            if ok and entry not in entries:
                entries.append(tuple(float(v) for v in entry))
        if not entries:
            raise ContractError(f"{self.name}: no valid grid entry for stats {stats}")
        return tuple(entries)

    def log_pdf(self, params, x):
        """Natural log of the density; -inf where the density is zero."""
        self.check_params(params)
        arr = np.asarray(x, dtype=float)
        scalar = arr.ndim == 0
        vals = np.atleast_1d(arr)
        out = np.full(vals.shape, -math.inf)
        interior = (vals > self.support_lower) & (vals < self.support_upper)
        if interior.any():
            with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
                out[interior] = self.log_pdf_fn(params, vals[interior])
        return float(out[0]) if scalar else out

    def pdf(self, params, x):
        lp = self.log_pdf(params, x)
        with np.errstate(over="ignore"):
            return np.exp(lp) if np.ndim(lp) else math.exp(min(lp, 700.0))

    def cdf(self, params, x):
        """P(X <= x), clipped into [0, 1]."""
        self.check_params(params)
        arr = np.asarray(x, dtype=float)
        scalar = arr.ndim == 0
        vals = np.atleast_1d(arr)
        out = np.zeros(vals.shape)
        out[vals >= self.support_upper] = 1.0
        mid = (vals > self.support_lower) & (vals < self.support_upper)
        if mid.any():
            with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
                out[mid] = np.clip(self.cdf_fn(params, vals[mid]), 0.0, 1.0)
        return float(out[0]) if scalar else out

    def quantile(self, params, q):
        """Inverse cdf for q in (0, 1); closed form where available."""
        self.check_params(params)
        arr = np.asarray(q, dtype=float)
        scalar = arr.ndim == 0
        qs = np.atleast_1d(arr)
        if np.any(~((qs > 0.0) & (qs < 1.0))):
            raise DomainError(f"{self.name}: quantile requires q in (0, 1), got {q!r}")
        if self.quantile_fn is not None:
            with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
                out = np.asarray(self.quantile_fn(params, qs), dtype=float)
        else:
            out = np.array([self._quantile_bisect(params, float(v)) for v in qs])
        return float(out[0]) if scalar else out

    def draw(self, params, n, seed):
        """n inverse-transform variates, deterministic given the seed."""
        self.check_params(params)
        if n < 1:
            raise DomainError(f"draw requires n >= 1, got {n}")
        rng = np.random.default_rng(seed)
        u = rng.random(int(n))
        u[u == 0.0] = np.nextafter(0.0, 1.0)
        return self.quantile(params, u)

    def _quantile_bisect(self, params, q):
        # bracket by exponential expansion, then bisect on the cdf
        lo = self.support_lower
        hi = self.support_upper
        anchor = 0.0
        if math.isfinite(lo):
            anchor = lo
        elif math.isfinite(hi):
            anchor = hi
        if not math.isfinite(hi):
            step = 1.0
            hi = anchor + step
            for _ in range(QUANTILE_MAX_ITER):
                if self.cdf(params, hi) >= q:
                    break
                step *= 2.0
                hi = anchor + step
            else:
                raise DomainError(f"{self.name}: failed to bracket quantile {q}")
        if not math.isfinite(lo):
            step = 1.0
            lo = min(hi, 0.0) - step
            for _ in range(QUANTILE_MAX_ITER):
                if self.cdf(params, lo) <= q:
                    break
                step *= 2.0
                lo = min(hi, 0.0) - step
            else:
                raise DomainError(f"{self.name}: failed to bracket quantile {q}")
        mid = 0.5 * (lo + hi)
        for _ in range(QUANTILE_MAX_ITER):
            mid = 0.5 * (lo + hi)
            c = self.cdf(params, mid)
            if abs(c - q) <= QUANTILE_PROB_TOL:
                break
            if c < q:
                lo = mid
            else:
                hi = mid
        return mid


# ---------------------------------------------------------------------------
# built-in families


def _weibull_logpdf(p, x):
    lam, k = p
    z = x / lam
    return math.log(k / lam) + (k - 1.0) * np.log(z) - z**k


def _weibull_cdf(p, x):
    lam, k = p
    return -np.expm1(-((x / lam) ** k))


def _weibull_quantile(p, q):
    lam, k = p
    return lam * (-np.log1p(-q)) ** (1.0 / k)



def _gamma_logpdf(p, x):
    a, t = p
    return (a - 1.0) * np.log(x) - x / t - a * math.log(t) - _sp.gammaln(a)


def _gamma_cdf(p, x):
    a, t = p
    return _sp.gammainc(a, x / t)


def _gamma_quantile(p, q):
    a, t = p
    return t * _sp.gammaincinv(a, q)



def _ggamma_logpdf(p, x):
    a, b, k = p
    return (
        math.log(b)
        + (b * k - 1.0) * np.log(x)
        - (x / a) ** b
        - b * k * math.log(a)
        - _sp.gammaln(k)
    )


def _ggamma_cdf(p, x):
    a, b, k = p
    return _sp.gammainc(k, (x / a) ** b)


def _ggamma_quantile(p, q):
    a, b, k = p
    return a * _sp.gammaincinv(k, q) ** (1.0 / b)



def _eweibull_logpdf(p, x):
    s, v, m = p
    t = (x / m) ** s
    return (
        math.log(s * v)
        + (s - 1.0) * np.log(x)
        - s * math.log(m)
        - t
        + (v - 1.0) * log1mexp(-t)
    )


def _eweibull_cdf(p, x):
    s, v, m = p
    return np.exp(v * log1mexp(-((x / m) ** s)))


def _eweibull_quantile(p, q):
    s, v, m = p
    u = np.log(q) / v
    return m * (-log1mexp(u)) ** (1.0 / s)



def _normal_logpdf(p, x):
    mu, sg = p
    z = (x - mu) / sg
    return -0.5 * z * z - math.log(sg) - 0.5 * _LOG_2PI


def _normal_cdf(p, x):
    mu, sg = p
    return _sp.ndtr((x - mu) / sg)


def _normal_quantile(p, q):
    mu, sg = p
    return mu + sg * _sp.ndtri(q)


def _tnormal_logpdf(p, x):
    mu, sg = p
    # 1 - Phi((0 - mu)/sg) = Phi(mu/sg)
    return _normal_logpdf(p, x) - _sp.log_ndtr(mu / sg)


def _tnormal_cdf(p, x):
    mu, sg = p
    # survival form: 1 - cdf = Phi(-(x-mu)/sg) / Phi(mu/sg), stable for any mu/sg
    return -np.expm1(_sp.log_ndtr(-(x - mu) / sg) - _sp.log_ndtr(mu / sg))


def _tnormal_quantile(p, q):
    mu, sg = p
    return mu - sg * _sp.ndtri_exp(np.log1p(-q) + _sp.log_ndtr(mu / sg))



def _lnormal_logpdf(p, x):
    mu, sg = p
    lx = np.log(x)
    z = (lx - mu) / sg
    return -lx - 0.5 * z * z - math.log(sg) - 0.5 * _LOG_2PI


def _lnormal_cdf(p, x):
    mu, sg = p
    return _sp.ndtr((np.log(x) - mu) / sg)


def _lnormal_quantile(p, q):
    mu, sg = p
    return np.exp(mu + sg * _sp.ndtri(q))


def _kwcwg_pieces(p, x):
    al, be, ga, a, b = p
    s = -((ga * x) ** be)  # log w, w = exp[-(gamma x)^beta]
    l1mw = log1mexp(s)
    ldenom = np.log(al + (1.0 - al) * np.exp(s))
    # 1 - G = w / (al + (1 - al) w) exactly, so log G stays accurate at G -> 1
    log_one_minus_g = s - ldenom
    log_g_base = log1mexp(log_one_minus_g)
    return s, l1mw, ldenom, log_g_base


def _kwcwg_logpdf(p, x):
    al, be, ga, a, b = p
    s, l1mw, ldenom, lG = _kwcwg_pieces(p, x)
    return (
        a * math.log(al)
        + math.log(be * ga * a * b)
        + (be - 1.0) * np.log(ga * x)
        + s
        + (a - 1.0) * l1mw
        - (a + 1.0) * ldenom
        + (b - 1.0) * log1mexp(a * lG)
    )


def _kwcwg_cdf(p, x):
    al, be, ga, a, b = p
    lG = _kwcwg_pieces(p, x)[3]
    return -np.expm1(b * log1mexp(a * lG))


def _kwcwg_quantile(p, q):
    al, be, ga, a, b = p
    lu = log1mexp(np.log1p(-q) / b) / a  # log of the base-cdf level to invert
    u = np.exp(lu)
    one_m_u = -np.expm1(lu)
    w = al * one_m_u / (al + u * (1.0 - al))
    return (-np.log(w)) ** (1.0 / be) / ga



def _ollgg_logpdf(p, x):
    al, tau, k, lam = p
    u = (x / al) ** tau
    lG = log_inc_gamma_lower(k, u)
    lH = log_inc_gamma_upper(k, u)
    lg = (
        math.log(tau)
        + (tau * k - 1.0) * np.log(x / al)
        - u
        - math.log(al)
        - _sp.gammaln(k)
    )
    return (
        math.log(lam)
        + lg
        + (lam - 1.0) * (lG + lH)
        - 2.0 * np.logaddexp(lam * lG, lam * lH)
    )


def _ollgg_cdf(p, x):
    al, tau, k, lam = p
    u = (x / al) ** tau
    lG = log_inc_gamma_lower(k, u)
    lH = log_inc_gamma_upper(k, u)
    return _sp.expit(lam * (lG - lH))


def _ollgg_quantile(p, q):
    al, tau, k, lam = p
    lo = (np.log(q) - np.log1p(-q)) / lam  # log-odds of the base cdf level
    g_left = _sp.gammaincinv(k, _sp.expit(lo))
    g_right = _sp.gammainccinv(k, _sp.expit(-lo))
    y = np.where(lo <= 0.0, g_left, g_right)
    return al * y ** (1.0 / tau)



FAMILIES = {
    "weibull": FamilyDescriptor(
        name="weibull",
        param_names=("lambda", "k"),
        param_domains=(POSITIVE, POSITIVE),
        log_pdf_fn=_weibull_logpdf,
        cdf_fn=_weibull_cdf,
        quantile_fn=_weibull_quantile,
        grid_fn=_grid_from_roles(("scale", "shape")),
    ),
    "gamma": FamilyDescriptor(
        name="gamma",
        param_names=("alpha", "theta"),
        param_domains=(POSITIVE, POSITIVE),
        log_pdf_fn=_gamma_logpdf,
        cdf_fn=_gamma_cdf,
        quantile_fn=_gamma_quantile,
        grid_fn=_grid_from_roles(("shape", "scale")),
    ),
    "ggamma": FamilyDescriptor(
        name="ggamma",
        param_names=("a", "b", "k"),
        param_domains=(POSITIVE, POSITIVE, POSITIVE),
        log_pdf_fn=_ggamma_logpdf,
        cdf_fn=_ggamma_cdf,
        quantile_fn=_ggamma_quantile,
        grid_fn=_grid_from_roles(("scale", "shape", "shape")),
    ),
    "eweibull": FamilyDescriptor(
        name="eweibull",
        param_names=("sigma", "nu", "mu"),
        param_domains=(POSITIVE, POSITIVE, POSITIVE),
        log_pdf_fn=_eweibull_logpdf,
        cdf_fn=_eweibull_cdf,
        quantile_fn=_eweibull_quantile,
        grid_fn=_grid_from_roles(("shape", "shape", "scale")),
    ),
    "normal": FamilyDescriptor(
        name="normal",
        param_names=("mu", "sigma"),
        param_domains=(REAL, POSITIVE),
        log_pdf_fn=_normal_logpdf,
        cdf_fn=_normal_cdf,
        quantile_fn=_normal_quantile,
        support_lower=-math.inf,
        grid_fn=_grid_from_roles(("center", "disp")),
    ),
    "tnormal": FamilyDescriptor(
        name="tnormal",
        param_names=("mu", "sigma"),
        param_domains=(REAL, POSITIVE),
        log_pdf_fn=_tnormal_logpdf,
        cdf_fn=_tnormal_cdf,
        quantile_fn=_tnormal_quantile,
        grid_fn=_grid_from_roles(("center", "disp")),
    ),
    "lnormal": FamilyDescriptor(
        name="lnormal",
        param_names=("mu", "sigma"),
        param_domains=(REAL, POSITIVE),
        log_pdf_fn=_lnormal_logpdf,
        cdf_fn=_lnormal_cdf,
        quantile_fn=_lnormal_quantile,
        grid_fn=_grid_from_roles(("log_center", "log_disp")),
    ),
    "kwcwg": FamilyDescriptor(
        name="kwcwg",
        param_names=("alpha", "beta", "gamma", "a", "b"),
        param_domains=(UNIT, POSITIVE, POSITIVE, POSITIVE, POSITIVE),
        log_pdf_fn=_kwcwg_logpdf,
        cdf_fn=_kwcwg_cdf,
        quantile_fn=_kwcwg_quantile,
        grid_fn=_grid_from_roles(("unit", "shape", "inv_scale", "shape", "shape")),
    ),
    "ollgg": FamilyDescriptor(
        name="ollgg",
        param_names=("alpha", "tau", "k", "lambda"),
        param_domains=(POSITIVE, POSITIVE, POSITIVE, POSITIVE),
        log_pdf_fn=_ollgg_logpdf,
        cdf_fn=_ollgg_cdf,
        quantile_fn=_ollgg_quantile,
        grid_fn=_grid_from_roles(("scale", "shape", "shape", "shape")),
    ),
}

FAMILY_NAMES = tuple(FAMILIES)


def get_family(name):
    try:
        return FAMILIES[name]
    except KeyError:
        raise DomainError(
            f"unknown family {name!r}; valid names: {', '.join(FAMILY_NAMES)}"
        ) from None


# ---------------------------------------------------------------------------
# constructions


def compose_cdf(outer, inner):
    """New family with cdf G(F(x)): outer G on [0, 1] fed the inner cdf F.

    The composed density is G'(F(x)) F'(x) by the chain rule and the quantile
    is F^-1(G^-1(q)); the parameter vector is the concatenation of the
    outer and inner vectors.
    """
    if outer.support_lower != 0.0 or outer.support_upper != 1.0:
        raise ContractError(
            f"compose_cdf outer family must have support [0, 1]; "
            f"{outer.name} has [{outer.support_lower:g}, {outer.support_upper:g}]"
        )
    n_outer = outer.param_count

    def split(p):
        return tuple(p[:n_outer]), tuple(p[n_outer:])

    def logpdf(p, x):
        po, pi = split(p)
        inner_cdf = inner.cdf(pi, x)
        return outer.log_pdf(po, inner_cdf) + inner.log_pdf(pi, x)

    def cdf(p, x):
        po, pi = split(p)
        return outer.cdf(po, inner.cdf(pi, x))

    quantile = None
    if outer.quantile_fn is not None and inner.quantile_fn is not None:

        def quantile(p, q):
            po, pi = split(p)
            return inner.quantile(pi, outer.quantile(po, q))

    def grid(stats):
        og = outer.grid_fn(stats)
        ig = inner.grid_fn(stats)
        return tuple(tuple(o) + tuple(i) for o in og for i in ig)

    return FamilyDescriptor(
        name=f"{outer.name}_of_{inner.name}",
        param_names=tuple(f"outer_{n}" for n in outer.param_names)
        + tuple(f"inner_{n}" for n in inner.param_names),
        param_domains=outer.param_domains + inner.param_domains,
        log_pdf_fn=logpdf,
        cdf_fn=cdf,
        quantile_fn=quantile,
        support_lower=inner.support_lower,
        support_upper=inner.support_upper,
        grid_fn=grid,
    )


def truncate_at(family, c):
    """Family of densities renormalized above the cut c, over y >= 0.

    log f_Y(y) = log f_X(y + c) - log(1 - F_X(c)).  Parameters whose mass
    lies entirely below c raise :class:`DegenerateTruncationError`.  Note
    that truncating generally leaves the family (memoryless families such
    as the exponential being the exception), which is why this is a
    construction and not a reparameterization.
    """

    def survival(p):
        sf = 1.0 - family.cdf(p, c)
        if sf <= 0.0:
            raise DegenerateTruncationError(
                f"{family.name}: no mass above truncation point c={c!r}"
            )
        return sf

    def logpdf(p, y):
        return family.log_pdf(p, y + c) - math.log(survival(p))

    def cdf(p, y):
        sf = survival(p)
        base_c = family.cdf(p, c)
        return (family.cdf(p, y + c) - base_c) / sf

    quantile = None
    if family.quantile_fn is not None:

        def quantile(p, q):
            sf = survival(p)
            base_c = family.cdf(p, c)
            return family.quantile(p, base_c + np.asarray(q) * sf) - c

    return FamilyDescriptor(
        name=f"trunc_{family.name}",
        param_names=family.param_names,
        param_domains=family.param_domains,
        log_pdf_fn=logpdf,
        cdf_fn=cdf,
        quantile_fn=quantile,
        support_lower=0.0,
        grid_fn=family.grid_fn,
    )


def shift_by(family, c):
    """Family translated right by c: support [support_lower + c, inf)."""

    def logpdf(p, y):
        return family.log_pdf(p, y - c)

    def cdf(p, y):
        return family.cdf(p, y - c)

    quantile = None
    if family.quantile_fn is not None:

        def quantile(p, q):
            return family.quantile(p, q) + c

    return FamilyDescriptor(
        name=f"{family.name}_shifted",
        param_names=family.param_names,
        param_domains=family.param_domains,
        log_pdf_fn=logpdf,
        cdf_fn=cdf,
        quantile_fn=quantile,
        support_lower=family.support_lower + c,
        support_upper=family.support_upper + c
        if math.isfinite(family.support_upper)
        else math.inf,
        grid_fn=family.grid_fn,
    )


def fix_params(family, fixed):
    """Sub-family with the parameters in ``fixed`` (index -> value) frozen."""
    for idx, value in fixed.items():
        if idx < 0 or idx >= family.param_count:
            raise DomainError(f"{family.name}: no parameter index {idx}")
        if not family.param_domains[idx].contains(value):
            raise DomainError(
                f"{family.name}: fixed {family.param_names[idx]}={value!r} "
                f"outside domain {family.param_domains[idx]}"
            )
    free = [i for i in range(family.param_count) if i not in fixed]
    if not free:
        raise ContractError(f"{family.name}: cannot fix every parameter")

    def embed(p):
        full = [0.0] * family.param_count
        for j, i in enumerate(free):
            full[i] = p[j]
        for i, v in fixed.items():
            full[i] = v
        return tuple(full)

    def grid(stats):
        entries = []
        for full in family.grid_fn(stats):
            proj = tuple(full[i] for i in free)
            if proj not in entries:
                entries.append(proj)
        return tuple(entries)

    quantile = None
    if family.quantile_fn is not None:

        def quantile(p, q):
            return family.quantile(embed(p), q)

    return FamilyDescriptor(
        name=f"{family.name}_fixed",
        param_names=tuple(family.param_names[i] for i in free),
        param_domains=tuple(family.param_domains[i] for i in free),
        log_pdf_fn=lambda p, x: family.log_pdf(embed(p), x),
        cdf_fn=lambda p, x: family.cdf(embed(p), x),
        quantile_fn=quantile,
        support_lower=family.support_lower,
        support_upper=family.support_upper,
        grid_fn=grid,
    )


def uniform01_family():
    """Uniform on [0, 1]; its cdf is the identity, so composing with it is a no-op."""
    return FamilyDescriptor(
        name="uniform01",
        param_names=(),
        param_domains=(),
        log_pdf_fn=lambda p, x: np.zeros(np.shape(x)),
        cdf_fn=lambda p, x: np.asarray(x, dtype=float),
        quantile_fn=lambda p, q: np.asarray(q, dtype=float),
        support_lower=0.0,
        support_upper=1.0,
        grid_fn=lambda stats: ((),),
    )


def beta_family():
    """Beta distribution on [0, 1]; a common outer family for cdf composition."""
    return FamilyDescriptor(
        name="beta",
        param_names=("a", "b"),
        param_domains=(POSITIVE, POSITIVE),
        log_pdf_fn=lambda p, x: (p[0] - 1.0) * np.log(x)
        + (p[1] - 1.0) * np.log1p(-x)
        - _sp.betaln(p[0], p[1]),
        cdf_fn=lambda p, x: _sp.betainc(p[0], p[1], x),
        quantile_fn=lambda p, q: _sp.betaincinv(p[0], p[1], q),
        support_lower=0.0,
        support_upper=1.0,
        grid_fn=_grid_from_roles(("shape", "shape")),
    )
