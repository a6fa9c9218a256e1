"""Point counts, zeta functions and trace-cohomology checks for varieties over finite fields."""

__version__ = "0.1.0"
