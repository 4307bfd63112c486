"""Contains the benchmark degradations, reference scores and harness."""
