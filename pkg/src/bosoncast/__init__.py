"""bosoncast - capacity regions and minimum output entropy checks for bosonic broadcast channels."""

__version__ = "0.1.0"
