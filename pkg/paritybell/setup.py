from setuptools import setup

setup(
    name='paritybell',
    version='1.0',
    description='Parity Bell: Bell-CHSH, GHZ and Mermin checks with parity pseudospins of light',
    packages=['paritybell'],
    install_requires=['numpy', 'scipy', 'pandas'],
    extras_require={'test': ['pytest', 'hypothesis']},
    scripts=['bin/paritybell'],
)
