"""Coverage producers: scanlines, constant-depth lines, NRLs and windows."""
