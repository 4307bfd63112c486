"""Contains the plotting functions."""
