"""phasefit - phase representation, phase fitting and noise robustness of interferometric states."""

__version__ = "0.1.0"
