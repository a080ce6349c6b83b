"""Unit test package for fockloop."""
