import { ApiClient } from "./api.js";
import { MapView, type MapOptions } from "./map.js";
import { QueryController, type UiState } from "./state.js";
import type { Algorithm, Origin } from "./types.js";
import { FACILITY_CATEGORIES, MAX_RENDERED_RESULTS } from "./types.js";

export interface AppConfig {
  apiBase?: string;
  api?: ApiClient;
  map?: Partial<MapOptions>;
}

export interface AppHandles {
  controller: QueryController;
  map: MapView;
  client: ApiClient;
  /** Resolves once the initial mall-marker load has settled. */
  ready: Promise<void>;
  elements: {
    latInput: HTMLInputElement;
    lngInput: HTMLInputElement;
    facilityCheckboxes: HTMLInputElement[];
    foodCourtToggle: HTMLInputElement;
    algorithmSelect: HTMLSelectElement;
    submitButton: HTMLButtonElement;
    resultsBody: HTMLTableSectionElement;
    errorBanner: HTMLElement;
  };
}

const GUIDELINES_TEXT =
  "Drag the red marker to your location (or type coordinates), tick the " +
  "facility categories you care about, then press Search. The list shows up " +
  "to ten malls no other mall beats on every selected criterion, nearest " +
  "first; yellow markers highlight them on the map.";

function section(title: string, className: string): HTMLElement {
  const panel = document.createElement("section");
  panel.className = `panel ${className}`;
  const heading = document.createElement("h2");
  heading.textContent = title;
  panel.appendChild(heading);
  return panel;
}

function coordinateField(label: string, id: string, value: number): [HTMLLabelElement, HTMLInputElement] {
  const wrapper = document.createElement("label");
  wrapper.htmlFor = id;
  wrapper.textContent = label;
  const input = document.createElement("input");
  input.type = "text";
  input.id = id;
  input.value = String(value);
  wrapper.appendChild(input);
  return [wrapper, input];
}

export function mountApp(root: HTMLElement, config: AppConfig = {}): AppHandles {
  const client = config.api ?? new ApiClient(config.apiBase ?? "http://127.0.0.1:8080");

  const layout = document.createElement("div");
  layout.className = "app-layout";
  root.appendChild(layout);

  const sidebar = document.createElement("aside");
  sidebar.className = "sidebar";
  const main = document.createElement("main");
  main.className = "main";
  layout.appendChild(sidebar);
  layout.appendChild(main);

  const mapContainer = document.createElement("div");
  mapContainer.className = "map-container";
  const errorBanner = document.createElement("div");
  errorBanner.className = "error-banner";
  errorBanner.hidden = true;
  main.appendChild(errorBanner);
  main.appendChild(mapContainer);

  const map = new MapView(mapContainer, config.map);
  const controller = new QueryController(client, map.getOrigin());

  // "Your Location" panel
  const locationPanel = section("Your Location", "panel-location");
  const [latLabel, latInput] = coordinateField("Latitude", "origin-lat", map.getOrigin().lat);
  const [lngLabel, lngInput] = coordinateField("Longitude", "origin-lng", map.getOrigin().lng);
  locationPanel.appendChild(latLabel);
  locationPanel.appendChild(lngLabel);
  sidebar.appendChild(locationPanel);

  // "Your Preference" panel
  const preferencePanel = section("Your Preference", "panel-preferences");
  const facilityCheckboxes: HTMLInputElement[] = [];
  const checkboxList = document.createElement("div");
  checkboxList.className = "facility-list";
  FACILITY_CATEGORIES.forEach((name, index) => {
    const label = document.createElement("label");
    label.className = "facility-option";
    const checkbox = document.createElement("input");
    checkbox.type = "checkbox";
    checkbox.value = String(index);
    checkbox.addEventListener("change", () => controller.setPreference(index, checkbox.checked));
    label.appendChild(checkbox);
    label.appendChild(document.createTextNode(name));
    checkboxList.appendChild(label);
    facilityCheckboxes.push(checkbox);
  });
  preferencePanel.appendChild(checkboxList);

  const foodCourtLabel = document.createElement("label");
  foodCourtLabel.className = "facility-option food-court-option";
  const foodCourtToggle = document.createElement("input");
  foodCourtToggle.type = "checkbox";
  foodCourtToggle.addEventListener("change", () => controller.setFoodCourt(foodCourtToggle.checked));
  foodCourtLabel.appendChild(foodCourtToggle);
  foodCourtLabel.appendChild(document.createTextNode("Food court"));
  preferencePanel.appendChild(foodCourtLabel);

  const algorithmSelect = document.createElement("select");
  for (const tag of ["sfs", "bnl", "dnc", "oracle"]) {
    const option = document.createElement("option");
    option.value = tag;
    option.textContent = tag;
    algorithmSelect.appendChild(option);
  }
  algorithmSelect.addEventListener("change", () =>
    controller.setAlgorithm(algorithmSelect.value as Algorithm),
  );
  const algorithmLabel = document.createElement("label");
  algorithmLabel.textContent = "Algorithm";
  algorithmLabel.appendChild(algorithmSelect);
  preferencePanel.appendChild(algorithmLabel);

  const submitButton = document.createElement("button");
  submitButton.type = "button";
  submitButton.className = "submit-button";
  submitButton.textContent = "Search";
  preferencePanel.appendChild(submitButton);
  sidebar.appendChild(preferencePanel);

  // Guidelines panel
  const guidelinesPanel = section("Guidelines", "panel-guidelines");
  const guidelines = document.createElement("p");
  guidelines.textContent = GUIDELINES_TEXT;
  guidelinesPanel.appendChild(guidelines);
  sidebar.appendChild(guidelinesPanel);

  // Results pane
  const resultsPanel = section("Results", "panel-results");
  const table = document.createElement("table");
  table.className = "results-table";
  const head = document.createElement("thead");
  head.innerHTML =
    "<tr><th>Rank</th><th>Mall</th><th>Distance</th><th>Parking</th><th>Probability</th></tr>";
  table.appendChild(head);
  const resultsBody = document.createElement("tbody");
  table.appendChild(resultsBody);
  resultsPanel.appendChild(table);
  main.appendChild(resultsPanel);

  const syncLocationInputs = (origin: Origin): void => {
    latInput.value = String(origin.lat);
    lngInput.value = String(origin.lng);
  };

  map.onOriginMoved((origin) => {
    syncLocationInputs(origin);
    controller.setOrigin(origin);
  });

  const applyTypedOrigin = (): void => {
    const lat = Number(latInput.value);
    const lng = Number(lngInput.value);
    if (!Number.isFinite(lat) || !Number.isFinite(lng)) return;
    map.setOrigin({ lat, lng });
    controller.setOrigin(map.getOrigin());
  };
  latInput.addEventListener("change", applyTypedOrigin);
  lngInput.addEventListener("change", applyTypedOrigin);

  const render = (state: UiState): void => {
    if (state.status.kind === "error") {
      errorBanner.textContent = state.status.message;
      errorBanner.hidden = false;
    } else {
      errorBanner.hidden = true;
    }
    submitButton.disabled = state.status.kind === "loading";
    if (state.results) {
      const entries = state.results.entries.slice(0, MAX_RENDERED_RESULTS);
      resultsBody.textContent = "";
      for (const entry of entries) {
        const row = document.createElement("tr");
        row.dataset.code = entry.code;
        const cells = [
          String(entry.rank),
          entry.code,
          `${entry.distance_km.toFixed(2)} km`,
          String(entry.parking_space),
          String(entry.probability),
        ];
        for (const text of cells) {
          const cell = document.createElement("td");
          cell.textContent = text;
          row.appendChild(cell);
        }
        resultsBody.appendChild(row);
      }
      map.highlightResults(entries);
    }
  };
  controller.onChange(render);

  submitButton.addEventListener("click", () => void controller.submit());

  const ready = client
    .listMalls()
    .then((malls) => map.setMalls(malls))
    .catch((error) => {
      errorBanner.textContent = `could not load malls: ${(error as Error).message}`;
      errorBanner.hidden = false;
    });

  return {
    controller,
    map,
    client,
    ready,
    elements: {
      latInput,
      lngInput,
      facilityCheckboxes,
      foodCourtToggle,
      algorithmSelect,
      submitButton,
      resultsBody,
      errorBanner,
    },
  };
}
