"""Entry point for running bosoncast as a module."""

from bosoncast.cli import app

if __name__ == "__main__":
    app()
