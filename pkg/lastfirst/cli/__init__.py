from lastfirst.cli.main import cli

__all__ = ["cli"]
