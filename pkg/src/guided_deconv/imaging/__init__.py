"""Contains the image and point spread function types."""
