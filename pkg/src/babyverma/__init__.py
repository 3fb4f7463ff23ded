"""Baby Verma modules, tensor filtrations and pyramids for gl_N / sl_N in characteristic p."""

__version__ = "0.1.0"
