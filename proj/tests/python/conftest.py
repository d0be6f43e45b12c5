import glob
import importlib.util
import os
import sys

# Under ctest, import the module staged in the build tree rather than an installed copy.
stage = os.environ.get("QMEXPECT_STAGE")
if stage:
    package = os.path.join(stage, "qmexpect")

    def load(name, path, **kw):
        spec = importlib.util.spec_from_file_location(name, path, **kw)
        module = importlib.util.module_from_spec(spec)
        sys.modules[name] = module
        spec.loader.exec_module(module)
        return module

    core = load("qmexpect._core", glob.glob(os.path.join(package, "_core*.so"))[0])
    load("qmexpect", os.path.join(package, "__init__.py"), submodule_search_locations=[package])._core = core
