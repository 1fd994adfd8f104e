from setuptools import setup, find_packages

setup(
    name="fusion2s",
    version="0.1.0",
    packages=find_packages(include=["fusion2s", "fusion2s.*"]),
    install_requires=[
        "fastapi",
        "uvicorn",
        "pydantic>=2.6",
        "numpy>=1.24",
        "python-dotenv>=1.0",
    ],
    python_requires=">=3.9",
    extras_require={
        "test": ["pytest", "pytest-mock", "pytest-cov", "httpx", "hypothesis"],
    },
    entry_points={
        "console_scripts": ["fusion2s=fusion2s.cli:main"],
    },
)
