"""Contains modules for I/O operations."""
