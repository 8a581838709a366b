import io
import os
import re

REQUIREMENT_RE = re.compile(r'^(([^=<>]+)[=<>]+[^#]+)(#.*)?$')


def update_pins(setup_args):
    # Use requirements and constraints to set version pins
    packages = set()
    constraint_files = []
    install_dir = os.path.dirname(os.path.abspath(__file__))
    with open(os.path.join(install_dir, 'requirements.txt')) as requirements:
        for r in requirements:
            if r.startswith('-c '):
                constraint_files.append(r.replace('-c ', '').strip())
            elif r.strip() and not r.startswith('#'):
                packages.add(r.strip().lower())

    pinned = {}
    for fname in constraint_files:
        with open(os.path.join(install_dir, fname)) as constraints:
            for c in constraints:
                matches = REQUIREMENT_RE.match(c.strip())
                if not matches:
                    continue
                pinned[matches.group(2).lower().strip()] = matches.group(1).strip()

    setup_args['install_requires'] = [pinned.get(p, p) for p in sorted(packages)]

    for extra, extra_packages in setup_args['extras_require'].items():
        for i, package in enumerate(extra_packages):
            extra_packages[i] = pinned.get(package.strip().lower(), package)

    with io.open(os.path.join(install_dir, 'README.md'), encoding='utf-8') as readme:
        setup_args.update({
            "long_description": readme.read(),
            "long_description_content_type": "text/markdown",
        })
