# Screening tests module
