"""Contains the core modules for the guided_deconv package."""
