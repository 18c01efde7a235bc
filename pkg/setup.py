"""orlov setup."""
from setuptools import setup

from orlov import __version__

setup(
    name='orlov',
    description=(
        'Graded commutative algebra and the singularity-category functors '
        'Phi_t and Psi_t'),
    long_description=(
        'Groebner bases and minimal free resolutions over graded quotients '
        'of polynomial rings over prime fields, complexes of graded modules, '
        'and the functors between graded singularity categories and derived '
        'categories of coherent sheaves on Gorenstein projective schemes.'),
    version=__version__,
    packages=['orlov'],
    license='GNU GPL v2',
    python_requires='>=3.8',
    install_requires=['sympy>=1.12', 'numpy', 'cachetools>=5'],
    extras_require={'test': ['pytest', 'hypothesis']},
    provides=['orlov'],
    entry_points={
        'console_scripts': ['orlov = orlov.cli:main'],
    },
    data_files=[
        ('share/orlov/problems', [
            'problems/complete_intersection.json',
            'problems/xy_hypersurface.json',
            'problems/fermat_cubic.json', 'problems/projective_plane.json',
            'problems/conic.json'])])
