"""Top-level package for fockloop."""

__author__ = """Schrubitteflau"""
__email__ = 'schrubitteflau@proton.me'
__version__ = "0.1.0"
