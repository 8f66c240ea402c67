# Fusion memo store
