import os


def create_folder_for_file(fpath: str | os.PathLike[str]):
    dirname = os.path.dirname(os.fspath(fpath))
    if dirname != "":
        os.makedirs(dirname, exist_ok=True)
    return fpath
