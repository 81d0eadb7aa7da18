from setuptools import setup, find_packages

setup(
    name="nonsmooth-cert",
    version="0.1.0",
    description="Certificates of nonsmoothability for locally linear Z_p-actions on spin 4-manifolds",
    author="Nathan",
    python_requires=">=3.10",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    package_data={"nonsmooth_cert": ["data/*.yaml"]},
    install_requires=[
        "click>=8.1.0",
        "pyyaml>=6.0",
        "sympy>=1.12",
    ],
    entry_points={
        "console_scripts": [
            "nonsmooth-cert=nonsmooth_cert.cli:main",
        ],
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Programming Language :: Python :: 3.13",
        "Programming Language :: Python :: 3.14",
    ],
)
