"""Settings and the exception hierarchy."""
