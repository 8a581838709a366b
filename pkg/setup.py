"""Install algentropy as a library and command line utility."""

from setup_utils import update_pins
from setuptools import setup

setup_args = dict(
    name='algentropy',
    packages=['algentropy'],
    version="0.3.0",
    description='Degree growth and algebraic entropy of birational and tropical maps',
    license='MIT',
    keywords=['algebraic entropy', 'integrability', 'birational maps', 'tropical geometry'],
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
    ],
    python_requires='>=3.8',
    include_package_data=True,
    package_data={'algentropy': ['logging.ini', 'default_configs/*']},
    zip_safe=False,
    entry_points={
        'console_scripts': [
            'algentropy = algentropy.command_line:algentropy',
        ],
    },
    extras_require={
        'dev': [
            "black",
            "bumpversion",
            "coverage",
            "flake8",
            "hypothesis",
            "mock",
            "pytest",
            "Sphinx",
            "tox",
        ]
    }
)

update_pins(setup_args)

setup(**setup_args)
