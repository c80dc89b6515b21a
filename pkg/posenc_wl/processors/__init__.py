"""Spectral operators, encodings, tokenization, refinement engines and transformers."""
