"""Capacity analysis of linear operator channels Y = XH over prime fields."""

__version__ = "0.1.0"
