"""Trade-study engine for lunar landing-pad construction methods."""

__version__ = "0.1.0"
