"""Reference density families with samplers and oracle entropy/varentropy.

Each family exposes a seedable sampler, a log-density, and oracle values
of the differential entropy and varentropy. The oracles are closed-form
where a closed form exists (normal, exponential, uniform); the heavy-tailed
families (Student-t, Pareto) are handled by adaptive Gauss-Kronrod
quadrature of the defining integrals after the substitution u = F(x),
which maps the support onto (0, 1) and tames the tails.

Density evaluation and oracle computation are pure functions; samplers
take an explicit generator, so concurrent consumers must hold independent
streams (see :mod:`varentropy.streams`).
"""

import math
import re
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .exceptions import (
    ConfigError,
    DimensionMismatchError,
    InvalidParamsError,
    QuadratureNonconvergenceError,
    UnsupportedQuadratureDimensionError,
)
from .streams import substream

CLOSED_FORM = "closed_form"
QUADRATURE = "quadrature"

# Oracle quadrature must come in under this error estimate to be trusted.
_ORACLE_ERROR_CAP = 1e-8
_QUAD_OPTS = dict(epsabs=1e-12, epsrel=1e-12, limit=400)


@dataclass(frozen=True)
class OracleValues:
    """Reference entropy/varentropy with provenance.

    ``error`` is an upper bound on the quadrature error (None for closed
    forms).
    """

    entropy: float
    varentropy: float
    provenance: str
    error: float | None = None


class Distribution:
    """Base class: a density on R^d with a seedable sampler."""

    dim = 1

    def sample(self, n, rng):
        raise NotImplementedError

    def _log_density_batch(self, X):
        raise NotImplementedError

    def log_density(self, x):
        """log f(x); -inf outside the support.

        Accepts a scalar (one-dimensional families), a length-d point, or
        an (m, d) batch; returns a float or a length-m vector accordingly.
        """
        x = np.asarray(x, dtype=np.float64)
        if x.ndim == 0:
            x = x.reshape(1, 1)
            scalar = True
        elif x.ndim == 1:
            if self.dim == 1 and x.shape[0] != 1:
                # a vector of scalar points
                x = x.reshape(-1, 1)
                scalar = False
            else:
                x = x.reshape(1, -1)
                scalar = True
        else:
            scalar = False
        if x.shape[1] != self.dim:
            raise DimensionMismatchError(
                f"point has dimension {x.shape[1]}, distribution has {self.dim}"
            )
        out = self._log_density_batch(x)
        return float(out[0]) if scalar else out

    def density(self, x):
        """f(x) = exp(log_density(x))."""
        out = self.log_density(x)
        return np.exp(out) if isinstance(out, np.ndarray) else math.exp(out)

    # one-dimensional extras -------------------------------------------------
    support = (-math.inf, math.inf)

    def cdf(self, x):
        raise NotImplementedError(f"{type(self).__name__} has no closed cdf")

    def ppf(self, u):
        raise NotImplementedError(f"{type(self).__name__} has no closed ppf")

    @property
    def has_exact_ball_mass(self):
        """True when mass of an interval can be computed from the cdf."""
        return self.dim == 1 and type(self).cdf is not Distribution.cdf

    def oracle_values(self):
        raise NotImplementedError

    def spec_string(self):
        raise NotImplementedError

    def __repr__(self):
        return self.spec_string()


def _as_scalar(value, name):
    if isinstance(value, (list, tuple, np.ndarray)):
        raise InvalidParamsError(f"{name} must be a scalar, got {value!r}")
    try:
        return float(value)
    except (TypeError, ValueError):
        raise InvalidParamsError(f"{name} must be a number, got {value!r}") from None


def _as_vector(value, d, name):
    arr = np.atleast_1d(np.asarray(value, dtype=np.float64))
    if arr.size == 1 and d > 1:
        arr = np.full(d, float(arr[0]))
    if arr.shape != (d,):
        raise InvalidParamsError(f"{name} must have length {d}, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise InvalidParamsError(f"{name} must be finite")
    return arr


class NormalDiag(Distribution):
    """Normal with diagonal covariance, componentwise mean/sigma."""

    def __init__(self, mean=0.0, sigma=1.0, dim=None):
        if dim is None:
            dim = max(np.atleast_1d(mean).size, np.atleast_1d(sigma).size)
        self.dim = int(dim)
        if self.dim < 1:
            raise InvalidParamsError("dimension must be >= 1")
        self.mean = _as_vector(mean, self.dim, "mean")
        self.sigma = _as_vector(sigma, self.dim, "sigma")
        if not np.all(self.sigma > 0):
            raise InvalidParamsError("sigma must be positive")
        self._log_norm = -0.5 * self.dim * math.log(2 * math.pi) - float(
            np.sum(np.log(self.sigma))
        )

    def sample(self, n, rng):
        return self.mean + self.sigma * rng.standard_normal((n, self.dim))

    def _log_density_batch(self, X):
        z = (X - self.mean) / self.sigma
        return self._log_norm - 0.5 * np.sum(z * z, axis=1)

    def cdf(self, x):
        if self.dim != 1:
            raise NotImplementedError("cdf only for one-dimensional normals")
        return special.ndtr((np.asarray(x) - self.mean[0]) / self.sigma[0])

    def ppf(self, u):
        if self.dim != 1:
            raise NotImplementedError("ppf only for one-dimensional normals")
        return self.mean[0] + self.sigma[0] * special.ndtri(np.asarray(u))

    def oracle_values(self):
        entropy = 0.5 * self.dim * math.log(2 * math.pi * math.e) + float(
            np.sum(np.log(self.sigma))
        )
        return OracleValues(entropy, self.dim / 2, CLOSED_FORM)

    def spec_string(self):
        mu = ",".join(repr(float(v)) for v in self.mean)
        sig = ",".join(repr(float(v)) for v in self.sigma)
        return f"normal(d={self.dim}, mu=[{mu}], sigma=[{sig}])"


class NormalFull(Distribution):
    """Normal with a full symmetric positive-definite covariance."""

    def __init__(self, mean, cov):
        self.mean = np.atleast_1d(np.asarray(mean, dtype=np.float64))
        self.dim = self.mean.shape[0]
        cov = np.asarray(cov, dtype=np.float64)
        if cov.shape != (self.dim, self.dim):
            raise InvalidParamsError(
                f"covariance must be {self.dim}x{self.dim}, got {cov.shape}"
            )
        if not np.allclose(cov, cov.T, rtol=1e-12, atol=1e-12):
            raise InvalidParamsError("covariance must be symmetric")
        try:
            self._chol = np.linalg.cholesky(cov)
        except np.linalg.LinAlgError:
            raise InvalidParamsError("covariance must be positive-definite") from None
        self.cov = cov
        self._log_det = 2.0 * float(np.sum(np.log(np.diag(self._chol))))

    def sample(self, n, rng):
        z = rng.standard_normal((n, self.dim))
        return self.mean + z @ self._chol.T

    def _log_density_batch(self, X):
        diff = X - self.mean
        # solve L y = diff^T for the Mahalanobis part
        y = np.linalg.solve(self._chol, diff.T)
        maha = np.sum(y * y, axis=0)
        return -0.5 * (self.dim * math.log(2 * math.pi) + self._log_det + maha)

    def oracle_values(self):
        entropy = 0.5 * (self.dim * math.log(2 * math.pi * math.e) + self._log_det)
        return OracleValues(entropy, self.dim / 2, CLOSED_FORM)

    def spec_string(self):
        return f"normal_full(d={self.dim})"


class Exponential(Distribution):
    """Exponential with rate parameter (mean 1/rate), support (0, inf)."""

    def __init__(self, rate=1.0):
        rate = _as_scalar(rate, "lambda")
        if not rate > 0 or not math.isfinite(rate):
            raise InvalidParamsError(f"rate must be positive, got {rate}")
        self.rate = rate
        self.support = (0.0, math.inf)

    def sample(self, n, rng):
        return rng.exponential(1.0 / self.rate, size=(n, 1))

    def _log_density_batch(self, X):
        x = X[:, 0]
        out = np.where(x > 0, math.log(self.rate) - self.rate * x, -np.inf)
        return out

    def cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        return np.where(x > 0, -np.expm1(-self.rate * x), 0.0)

    def ppf(self, u):
        return -np.log1p(-np.asarray(u)) / self.rate

    def oracle_values(self):
        return OracleValues(1.0 - math.log(self.rate), 1.0, CLOSED_FORM)

    def spec_string(self):
        return f"exponential(lambda={self.rate!r})"


class Uniform(Distribution):
    """Uniform on the cube (a, b)^d."""

    def __init__(self, low=0.0, high=1.0, dim=1):
        low = _as_scalar(low, "a")
        high = _as_scalar(high, "b")
        if not (math.isfinite(low) and math.isfinite(high) and high > low):
            raise InvalidParamsError(f"need finite b > a, got a={low}, b={high}")
        self.dim = int(dim)
        if self.dim < 1:
            raise InvalidParamsError("dimension must be >= 1")
        self.low = float(low)
        self.high = float(high)
        self.support = (self.low, self.high)

    def sample(self, n, rng):
        return rng.uniform(self.low, self.high, size=(n, self.dim))

    def _log_density_batch(self, X):
        inside = np.all((X > self.low) & (X < self.high), axis=1)
        val = -self.dim * math.log(self.high - self.low)
        return np.where(inside, val, -np.inf)

    def cdf(self, x):
        if self.dim != 1:
            raise NotImplementedError("cdf only for one-dimensional uniforms")
        x = np.asarray(x, dtype=np.float64)
        return np.clip((x - self.low) / (self.high - self.low), 0.0, 1.0)

    def ppf(self, u):
        if self.dim != 1:
            raise NotImplementedError("ppf only for one-dimensional uniforms")
        return self.low + (self.high - self.low) * np.asarray(u)

    def oracle_values(self):
        return OracleValues(self.dim * math.log(self.high - self.low), 0.0, CLOSED_FORM)

    def spec_string(self):
        return f"uniform(a={self.low!r}, b={self.high!r}, d={self.dim})"


class StudentT(Distribution):
    """Student-t with df degrees of freedom, one-dimensional."""

    def __init__(self, df):
        df = _as_scalar(df, "nu")
        if not df > 0 or not math.isfinite(df):
            raise InvalidParamsError(f"degrees of freedom must be positive, got {df}")
        self.df = df
        self._log_norm = (
            math.lgamma((self.df + 1) / 2)
            - math.lgamma(self.df / 2)
            - 0.5 * math.log(self.df * math.pi)
        )

    def sample(self, n, rng):
        return rng.standard_t(self.df, size=(n, 1))

    def _log_density_batch(self, X):
        x = X[:, 0]
        return self._log_norm - (self.df + 1) / 2 * np.log1p(x * x / self.df)

    def cdf(self, x):
        return special.stdtr(self.df, np.asarray(x, dtype=np.float64))

    def ppf(self, u):
        return special.stdtrit(self.df, np.asarray(u, dtype=np.float64))

    def oracle_values(self):
        return quadrature_oracle(self)

    def spec_string(self):
        return f"student_t(nu={self.df!r})"


class Pareto(Distribution):
    """Pareto with tail index ``shape`` and left endpoint ``scale``."""

    def __init__(self, shape, scale=1.0):
        shape = _as_scalar(shape, "alpha")
        scale = _as_scalar(scale, "xm")
        if not shape > 0 or not math.isfinite(shape):
            raise InvalidParamsError(f"shape must be positive, got {shape}")
        if not scale > 0 or not math.isfinite(scale):
            raise InvalidParamsError(f"scale must be positive, got {scale}")
        self.shape = shape
        self.scale = scale
        self.support = (self.scale, math.inf)

    def sample(self, n, rng):
        u = rng.uniform(size=(n, 1))
        return self.scale * (1.0 - u) ** (-1.0 / self.shape)

    def _log_density_batch(self, X):
        x = X[:, 0]
        with np.errstate(invalid="ignore", divide="ignore"):
            val = (
                math.log(self.shape)
                + self.shape * math.log(self.scale)
                - (self.shape + 1) * np.log(x)
            )
        return np.where(x >= self.scale, val, -np.inf)

    def cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        with np.errstate(invalid="ignore", divide="ignore"):
            val = 1.0 - (self.scale / x) ** self.shape
        return np.where(x >= self.scale, val, 0.0)

    def ppf(self, u):
        return self.scale * (1.0 - np.asarray(u)) ** (-1.0 / self.shape)

    def oracle_values(self):
        return quadrature_oracle(self)

    def spec_string(self):
        return f"pareto(alpha={self.shape!r}, xm={self.scale!r})"


def quadrature_oracle(dist):
    """Entropy and varentropy by adaptive quadrature of the defining integrals.

    Integrates -log f and log^2 f against the density after substituting
    u = F(x), so the integration domain is (0, 1) regardless of tail weight.
    Only one-dimensional families are covered.
    """
    if dist.dim != 1:
        raise UnsupportedQuadratureDimensionError(
            f"quadrature oracle covers d=1 only, got d={dist.dim}"
        )

    def neg_log_f_of_u(u):
        return -dist.log_density(float(dist.ppf(u)))

    def sq_log_f_of_u(u):
        return dist.log_density(float(dist.ppf(u))) ** 2

    entropy, h_err = integrate.quad(neg_log_f_of_u, 0.0, 1.0, **_QUAD_OPTS)
    second, s_err = integrate.quad(sq_log_f_of_u, 0.0, 1.0, **_QUAD_OPTS)
    varentropy = second - entropy ** 2
    err = s_err + 2.0 * abs(entropy) * h_err + h_err ** 2
    if not (math.isfinite(err) and err <= _ORACLE_ERROR_CAP):
        raise QuadratureNonconvergenceError(
            f"oracle quadrature error estimate {err:.3e} exceeds {_ORACLE_ERROR_CAP}"
        )
    return OracleValues(entropy, varentropy, QUADRATURE, error=err)


def sample_distribution(dist, n, seed):
    """Draw n points deterministically from (dist, seed)."""
    if n < 2:
        raise InvalidParamsError(f"sample size must be >= 2, got {n}")
    return dist.sample(n, substream(seed))


# ---------------------------------------------------------------------------
# plain-text spec grammar: name(key=value, key=[v1,v2], ...)
# ---------------------------------------------------------------------------

_SPEC_RE = re.compile(r"^\s*([a-z_]+)\s*\(\s*(.*?)\s*\)\s*$", re.DOTALL)
_NUMBER_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def _parse_value(text, where):
    text = text.strip()
    if text.startswith("[") and text.endswith("]"):
        inner = text[1:-1].strip()
        if not inner:
            raise ConfigError(f"empty list in {where}")
        return [_parse_value(part, where) for part in inner.split(",")]
    if not _NUMBER_RE.match(text):
        raise ConfigError(f"expected a number in {where}, got {text!r}")
    return int(text) if re.fullmatch(r"[+-]?\d+", text) else float(text)


def _split_args(body):
    # split on commas that are not inside brackets
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(body[start:i])
            start = i + 1
    parts.append(body[start:])
    return [p for p in parts if p.strip()]


def parse_distribution(text):
    """Parse a distribution spec string.

    Grammar: ``normal(d=2, sigma=[1,2])``, ``exponential(lambda=1)``,
    ``uniform(a=0, b=1, d=3)``, ``student_t(nu=3)``, ``pareto(alpha=3, xm=1)``.
    """
    m = _SPEC_RE.match(text)
    if not m:
        raise ConfigError(f"cannot parse distribution spec {text!r}")
    name, body = m.group(1), m.group(2)
    kwargs = {}
    for part in _split_args(body):
        if "=" not in part:
            raise ConfigError(f"expected key=value in {text!r}, got {part.strip()!r}")
        key, _, value = part.partition("=")
        key = key.strip()
        if key in kwargs:
            raise ConfigError(f"duplicate key {key!r} in {text!r}")
        kwargs[key] = _parse_value(value, text)

    def take(allowed):
        extra = set(kwargs) - set(allowed)
        if extra:
            raise ConfigError(f"unknown keys {sorted(extra)} for {name!r}")
        return kwargs

    if name == "normal":
        take({"d", "mu", "sigma"})
        dim = kwargs.get("d")
        return NormalDiag(
            mean=kwargs.get("mu", 0.0), sigma=kwargs.get("sigma", 1.0), dim=dim
        )
    if name == "exponential":
        take({"lambda"})
        return Exponential(rate=kwargs.get("lambda", 1.0))
    if name == "uniform":
        take({"a", "b", "d"})
        return Uniform(
            low=kwargs.get("a", 0.0), high=kwargs.get("b", 1.0), dim=kwargs.get("d", 1)
        )
    if name == "student_t":
        take({"nu"})
        if "nu" not in kwargs:
            raise ConfigError("student_t requires nu")
        return StudentT(df=kwargs["nu"])
    if name == "pareto":
        take({"alpha", "xm"})
        if "alpha" not in kwargs:
            raise ConfigError("pareto requires alpha")
        return Pareto(shape=kwargs["alpha"], scale=kwargs.get("xm", 1.0))
    raise ConfigError(f"unknown distribution family {name!r}")
