"""Differential and property-based test driver for both set structures."""
