# CenteredMeasure Parsers Package
# Separates input-file parsing from the numerical modules.
