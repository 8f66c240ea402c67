# Verlinde - Source Package
