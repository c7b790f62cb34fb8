"""Circle patterns, incircular nets, and touching-sphere congruences."""

__version__ = "0.1.0"
