from setuptools import setup, find_packages

setup(
    name='nqf',
    version='0.1',
    description='Exact Nichols-algebra models of quantum cohomology of flag varieties',
    license='MPL 2.0',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    packages=find_packages(exclude=['test']),
    install_requires=[
        'filelock',
        'six',
    ],
    entry_points={
        'console_scripts': [
            'nqf = nqf.command:main'
        ]
    },
)
