"""Naturalness of finite metric spaces, graphs and groups."""
__version__ = "0.1.0"
