"""Contains the deblurring, filtering and parameter selection modules."""
