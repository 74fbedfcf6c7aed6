# duality/__init__.py
