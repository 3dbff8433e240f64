from setuptools import Extension, setup


def get_extensions():
    """Compiled digit kernels; the package falls back to pure Python without them."""
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("WARNING: Cython not available, building without compiled kernels.")
        return []

    extensions = [
        Extension(
            "mv2codec._kernels",
            sources=["src/mv2codec/_kernels.pyx"],
            extra_compile_args=["-O3"],
        )
    ]
    return cythonize(
        extensions,
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )


setup(ext_modules=get_extensions())
