"""One-parameter Nielsen theory for fiber-preserving maps of torus bundles over the circle."""
