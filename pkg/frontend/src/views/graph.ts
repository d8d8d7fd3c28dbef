/** Co-occurrence graph view: nodes sized by prevalence ("the larger the
 * star"), edges filtered by the min-weight slider with the same strict
 * threshold the server's prune uses (weight > minWeight). Layout is a simple
 * deterministic circle; weights and prevalences come straight from the API. */

import type { GraphEdge, GraphNode, GraphResponse } from "../types.js";

const SIZE = 520;
const CENTER = SIZE / 2;
const RING = SIZE / 2 - 60;
const MIN_RADIUS = 5;
const MAX_RADIUS = 30;

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Strictly increasing in prevalence (sqrt-compressed so large hubs do not
 * drown the view). maxPrevalence only rescales; ordering is preserved. */
export function nodeRadius(prevalence: number, maxPrevalence: number): number {
  const scale = Math.sqrt(prevalence) / Math.sqrt(Math.max(1, maxPrevalence));
  return MIN_RADIUS + (MAX_RADIUS - MIN_RADIUS) * scale;
}

/** Slider semantics match the server's prune: keep weight strictly above the
 * threshold, then drop nodes left with no visible edge — except the seed,
 * which stays as the anchor of the view. */
export function filterGraph(graph: GraphResponse, minWeight: number): GraphResponse {
  const edges = graph.edges.filter((e) => e.w > minWeight);
  const connected = new Set<string>();
  for (const e of edges) {
    connected.add(e.a);
    connected.add(e.b);
  }
  const nodes = graph.nodes.filter((n) => connected.has(n.id) || n.id === graph.seed);
  return { ...graph, nodes, edges };
}

export interface GraphViewModel {
  nodes: { node: GraphNode; x: number; y: number; radius: number }[];
  edges: { edge: GraphEdge; x1: number; y1: number; x2: number; y2: number }[];
}

export function graphViewModel(graph: GraphResponse, minWeight: number): GraphViewModel {
  const visible = filterGraph(graph, minWeight);
  const maxPrevalence = Math.max(1, ...visible.nodes.map((n) => n.prevalence));
  const ordered = [...visible.nodes].sort((a, b) => a.id.localeCompare(b.id));
  const placed = new Map<string, { x: number; y: number }>();
  ordered.forEach((node, index) => {
    if (node.id === graph.seed) {
      placed.set(node.id, { x: CENTER, y: CENTER });
      return;
    }
    const angle = (2 * Math.PI * index) / ordered.length;
    placed.set(node.id, {
      x: CENTER + RING * Math.cos(angle),
      y: CENTER + RING * Math.sin(angle),
    });
  });
  return {
    nodes: ordered.map((node) => ({
      node,
      ...placed.get(node.id)!,
      radius: nodeRadius(node.prevalence, maxPrevalence),
    })),
    edges: visible.edges.map((edge) => ({
      edge,
      x1: placed.get(edge.a)!.x,
      y1: placed.get(edge.a)!.y,
      x2: placed.get(edge.b)!.x,
      y2: placed.get(edge.b)!.y,
    })),
  };
}

export function renderGraphView(graph: GraphResponse, minWeight: number): string {
  const model = graphViewModel(graph, minWeight);
  const parts: string[] = [`<svg viewBox="0 0 ${SIZE} ${SIZE}" role="img" aria-label="graph">`];
  for (const e of model.edges) {
    parts.push(
      `<line class="graph-edge" x1="${e.x1.toFixed(1)}" y1="${e.y1.toFixed(1)}"` +
        ` x2="${e.x2.toFixed(1)}" y2="${e.y2.toFixed(1)}"` +
        ` data-a="${escapeXml(e.edge.a)}" data-b="${escapeXml(e.edge.b)}" data-w="${e.edge.w}"/>`,
    );
  }
  for (const n of model.nodes) {
    parts.push(
      `<circle class="graph-node" cx="${n.x.toFixed(1)}" cy="${n.y.toFixed(1)}"` +
        ` r="${n.radius.toFixed(2)}" data-id="${escapeXml(n.node.id)}"` +
        ` data-prevalence="${n.node.prevalence}"/>`,
    );
    parts.push(
      `<text class="graph-label" x="${n.x.toFixed(1)}" y="${(n.y - n.radius - 4).toFixed(1)}">` +
        `${escapeXml(n.node.id)}</text>`,
    );
  }
  parts.push("</svg>");
  return parts.join("\n");
}
