import os

import polars as pl

from tiltcell.core.constants import NODE_ATTRIBUTES


def render_tsv_value(val) -> str:
    if type(val) == set:
        val = f'"{";".join(sorted(str(v) for v in val))}"'
    ## take out any weird line breaks
    return str(val).replace("\n", "").replace("\t", " ")


class NodeSet:
    """alcoves of a truncated W^f keyed by reduced word"""

    def __init__(
        self,
        node_set_name: str = "",
        node_type: str = "alcove",
        attributes: list = NODE_ATTRIBUTES,
    ):
        self.node_set_name = node_set_name
        self.path = ""
        self.nodes = dict()
        self.node_type = node_type
        self.attributes = attributes

    def __getitem__(self, key: str):
        return self.nodes[key]

    def __len__(self):
        return len(self.nodes)

    def __contains__(self, key):
        return key in self.nodes

    def __str__(self):
        rep = ""
        for node in self.nodes:
            rep += f"{node}:{str(self.nodes[node])}\n"
        return rep

    def update_nodes(self, new_node: dict, new_node_id=None):
        set_attributes = [x for x in self.attributes if "string[]" in x]
        new_node_id = new_node_id or new_node.get("curie:ID", "no_id")
        if new_node_id in self.nodes:
            for attribute in set_attributes:
                attr_val = new_node.get(attribute, "")
                attr_val = set([attr_val]) if type(attr_val) == str else set(attr_val)
                self.nodes[new_node_id][attribute] |= attr_val
            return
        self.nodes[new_node_id] = dict()
        for attribute in self.attributes:
            attr_val = new_node.get(attribute, "")
            if attribute not in set_attributes:
                self.nodes[new_node_id][attribute] = attr_val
            elif attr_val == "":
                self.nodes[new_node_id][attribute] = set()
            else:
                self.nodes[new_node_id][attribute] = (
                    set([attr_val]) if type(attr_val) == str else set(attr_val)
                )

    def load_node_set(self, path):
        self.path = path
        if not os.path.exists(self.path):
            return
        df = pl.read_csv(self.path, separator="\t", infer_schema_length=0).fill_null("")
        if len(self.attributes) == 0:
            self.attributes = df.columns
        for row in df.iter_rows(named=True):
            curie = row[self.attributes[0]]
            self.nodes[curie] = dict()
            for attribute in self.attributes:
                val = row.get(attribute, "")
                if ":string[]" in attribute:
                    val = set(v for v in str(val).replace('"', "").split(";") if v)
                self.nodes[curie][attribute] = val

    def write_node_set(self, path):
        with open(path, "w") as f:
            f.write("\t".join(self.attributes) + "\n")
            for curie in self.nodes:
                row = [render_tsv_value(self.nodes[curie][col]) for col in self.attributes]
                f.write("\t".join(row) + "\n")
