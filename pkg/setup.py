from setuptools import setup, find_packages

setup(
    name = 'IonTransPy',
    version = '0.1.0',
    description = "Non-autoregressive ionic transport prediction from structure and temperature",
    author = 'IonTransPy developers',
    license = 'MIT',
    packages = find_packages(exclude=['tests']),
    install_requires = ['matplotlib','numpy','scipy','pandas','omegaconf','tqdm'],
    extras_require = {'test': ['pytest']},
    entry_points = {'console_scripts': ['iontranspy = iontranspy.harness.cli:main']},
    keywords = 'ionic transport diffusivity conductivity molecular dynamics knowledge transfer',
)
