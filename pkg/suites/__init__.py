# suites/__init__.py
