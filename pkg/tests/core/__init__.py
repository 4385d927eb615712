# Core tests
