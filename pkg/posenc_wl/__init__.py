"""posenc-wl - graph positional encodings and the WL-style tests that measure their power."""

__version__ = "0.1.0"
__description__ = "Positional encodings, RPE-augmented WL refinement and their distinguishing-power hierarchy"
