# Screening workflows module
