"""pfkit: exact computational algebra for matroid representations over
partial fields."""

__version__ = "0.1.0"
