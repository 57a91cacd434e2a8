import setuptools
from os import path

this_directory = path.abspath(path.dirname(__file__))
with open(path.join(this_directory, 'README.md')) as f:
	long_description = f.read()

setuptools.setup(
	name = 'qarray',
	packages = ['qarray'],
	version = '0.1.0',
	license='MIT',
	description = 'Parametric-drive-enhanced atom-atom interactions in coupled-cavity arrays',
	long_description = long_description,
	long_description_content_type = 'text/markdown',
	keywords = ['quantum optics', 'cavity QED', 'coupled-cavity array', 'squeezing', 'bound state', 'physics'],
	python_requires='>=3.7',
	install_requires=[
			'numpy',
			'scipy',
			'tqdm',
			'termcolor',
			'click'
		],
	extras_require={
			'test': ['pytest']
		},
	entry_points={
			'console_scripts': ['qarray = qarray.cli:main']
		},
	classifiers=[
		'Development Status :: 3 - Alpha',
		'Intended Audience :: Science/Research',
		'Topic :: Scientific/Engineering :: Physics',
		'License :: OSI Approved :: MIT License',
		'Programming Language :: Python :: 3',
		'Programming Language :: Python :: 3.7',
		'Programming Language :: Python :: 3.8',
		'Programming Language :: Python :: 3.9',
	],
)
