# formats/__init__.py
