from setuptools import Extension, setup


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    try:
        return cythonize(
            [Extension("qweyl._speedups", ["src/qweyl/_speedups.pyx"])],
            language_level=3,
        )
    except Exception:
        return []


setup(ext_modules=extensions())
