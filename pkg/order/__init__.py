# order/__init__.py
