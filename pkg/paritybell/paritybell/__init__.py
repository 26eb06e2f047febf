from .paritybell import __version__
