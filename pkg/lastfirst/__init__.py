"""Landmark sampling by maxmin and lastfirst, landmark covers and their nerves."""

__version__ = "0.1.0"
