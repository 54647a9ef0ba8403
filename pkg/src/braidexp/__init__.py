"""Two-strand braids from their Vassiliev-Kontsevich invariants.

tau = sum (-1)^(n+1) (q^n - q^-n)/n lives in l2(Z); exp(tau) = q is checked
by direct truncated convolution and against exact Fourier coefficients of
(i theta)^m.
"""
from ._backend import BACKEND
from .biseq import BilateralSequence, add, convolve, delta, l2_norm, scale, truncate, zero
from .fourier_oracle import (
    PiPolynomial,
    exp_tau_coeff,
    parseval_check,
    quadrature_coeff,
    tau_power,
    theta_power_coeff,
)
from .report import CheckReport
from .series_engine import exp_direct, tau, tau_via_log_trick, verify_exp_tau

__version__ = "0.1.0"
