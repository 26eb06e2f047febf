from setuptools import setup

# The project sources live in paritybell/ (see paritybell/setup.py); this
# root manifest maps the package there so the repo root is installable.
setup(
    name='paritybell',
    version='1.0',
    description='Parity Bell: Bell-CHSH, GHZ and Mermin checks with parity pseudospins of light',
    packages=['paritybell'],
    package_dir={'paritybell': 'paritybell/paritybell'},
    install_requires=['numpy', 'scipy', 'pandas'],
    extras_require={'test': ['pytest', 'hypothesis']},
    scripts=['paritybell/bin/paritybell'],
)
