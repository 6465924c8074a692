#packages\dyadic_lasso\src\dyadic_lasso\__init__.py
__version__ = "1.0.0"
