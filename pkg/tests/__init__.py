# Test package marker
