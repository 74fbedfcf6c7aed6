# scale/__init__.py
